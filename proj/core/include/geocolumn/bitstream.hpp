#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace geocolumn {

// Bit-level output buffer. write(v, k) appends the k least-significant bits
// of v; bits fill each byte LSB-first, so after align_to_byte() a 64-bit
// write produces eight little-endian bytes.
class BitWriter {
public:
	void write(uint64_t value, unsigned bit_count);

	// Pads with zero bits to the next byte boundary.
	void align_to_byte();

	uint64_t bit_size() const {
		return uint64_t(buf_.size()) * 8 + pending_bits_;
	}

	// Flushes the partial byte (zero-padded) and returns the buffer.
	std::vector<uint8_t> take();

	const std::vector<uint8_t> &bytes() {
		align_to_byte();
		return buf_;
	}

private:
	std::vector<uint8_t> buf_;
	uint64_t acc_ = 0;
	unsigned pending_bits_ = 0; // < 8
};

// Mirror of BitWriter over a byte view. read(k) returns the next k bits
// zero-extended; reading past the end throws CorruptionError.
class BitReader {
public:
	explicit BitReader(std::span<const uint8_t> data) : data_(data) {
	}

	uint64_t read(unsigned bit_count);
	void align_to_byte();

	uint64_t bits_remaining() const {
		return uint64_t(data_.size()) * 8 - pos_;
	}

private:
	std::span<const uint8_t> data_;
	uint64_t pos_ = 0;
};

} // namespace geocolumn
