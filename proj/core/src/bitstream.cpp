#include "geocolumn/bitstream.hpp"

#include "geocolumn/error.hpp"

#include <cassert>

namespace geocolumn {

void BitWriter::write(uint64_t value, unsigned bit_count) {
	assert(bit_count <= 64);
	if (bit_count == 0) {
		return;
	}
	if (bit_count < 64) {
		value &= (uint64_t(1) << bit_count) - 1;
	}
	// [hi:acc_] forms a conceptual 128-bit register; pending_bits_ < 8 at
	// entry, so the spill into hi is at most 7 bits.
	const unsigned shift = pending_bits_;
	acc_ |= value << shift;
	uint64_t hi = shift ? (value >> (64 - shift)) : 0;
	unsigned total = pending_bits_ + bit_count;
	while (total >= 8) {
		buf_.push_back(uint8_t(acc_));
		acc_ = (acc_ >> 8) | (hi << 56);
		hi >>= 8;
		total -= 8;
	}
	pending_bits_ = total;
}

void BitWriter::align_to_byte() {
	if (pending_bits_ > 0) {
		buf_.push_back(uint8_t(acc_));
		acc_ = 0;
		pending_bits_ = 0;
	}
}

std::vector<uint8_t> BitWriter::take() {
	align_to_byte();
	return std::move(buf_);
}

uint64_t BitReader::read(unsigned bit_count) {
	assert(bit_count <= 64);
	if (bit_count == 0) {
		return 0;
	}
	if (pos_ + bit_count > uint64_t(data_.size()) * 8) {
		throw CorruptionError("bit stream exhausted");
	}
	uint64_t result = 0;
	unsigned got = 0;
	size_t byte = size_t(pos_ >> 3);
	unsigned bit_off = unsigned(pos_ & 7);
	while (got < bit_count) {
		unsigned avail = 8 - bit_off;
		unsigned take = std::min(avail, bit_count - got);
		uint64_t chunk = (uint64_t(data_[byte]) >> bit_off) & ((uint64_t(1) << take) - 1);
		result |= chunk << got;
		got += take;
		bit_off += take;
		if (bit_off == 8) {
			bit_off = 0;
			++byte;
		}
	}
	pos_ += bit_count;
	return result;
}

void BitReader::align_to_byte() {
	pos_ = (pos_ + 7) & ~uint64_t(7);
	if (pos_ > uint64_t(data_.size()) * 8) {
		pos_ = uint64_t(data_.size()) * 8;
	}
}

} // namespace geocolumn
