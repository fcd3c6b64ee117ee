#include "geocolumn/pages.hpp"

#include "geocolumn/bitstream.hpp"
#include "geocolumn/error.hpp"

namespace geocolumn {

namespace {

void put_u32(std::vector<uint8_t> &out, uint32_t v) {
	for (int i = 0; i < 4; ++i) {
		out.push_back(uint8_t(v >> (8 * i)));
	}
}

void put_u64(std::vector<uint8_t> &out, uint64_t v) {
	for (int i = 0; i < 8; ++i) {
		out.push_back(uint8_t(v >> (8 * i)));
	}
}

// Bounds-checked little-endian cursor.
class Cursor {
public:
	explicit Cursor(std::span<const uint8_t> bytes) : bytes_(bytes) {
	}

	uint32_t u32() {
		return uint32_t(fixed(4));
	}
	uint64_t u64() {
		return fixed(8);
	}
	uint8_t u8() {
		return uint8_t(fixed(1));
	}
	bool done() const {
		return pos_ == bytes_.size();
	}

private:
	uint64_t fixed(unsigned n) {
		if (bytes_.size() - pos_ < n) {
			throw CorruptionError("page payload truncated");
		}
		uint64_t v = 0;
		for (unsigned i = 0; i < n; ++i) {
			v |= uint64_t(bytes_[pos_ + i]) << (8 * i);
		}
		pos_ += n;
		return v;
	}

	std::span<const uint8_t> bytes_;
	size_t pos_ = 0;
};

} // namespace

std::vector<uint8_t> serialize_type_page(std::span<const TypeRun> runs) {
	std::vector<uint8_t> out;
	out.reserve(4 + runs.size() * 9);
	put_u32(out, uint32_t(runs.size()));
	for (const TypeRun &run : runs) {
		put_u64(out, run.count);
		out.push_back(uint8_t(run.value));
	}
	return out;
}

std::vector<TypeRun> parse_type_page(std::span<const uint8_t> bytes) {
	Cursor in(bytes);
	uint32_t n = in.u32();
	std::vector<TypeRun> runs;
	runs.reserve(n);
	for (uint32_t i = 0; i < n; ++i) {
		TypeRun run;
		run.count = in.u64();
		uint8_t code = in.u8();
		if (code > uint8_t(GeometryType::MultiPolygon)) {
			throw FormatError("type run carries unknown geometry code " + std::to_string(code));
		}
		run.value = GeometryType(code);
		runs.push_back(run);
	}
	if (!in.done()) {
		throw CorruptionError("trailing bytes after type runs");
	}
	return runs;
}

std::vector<uint8_t> serialize_levels_page(std::span<const LevelEntry> entries) {
	std::vector<uint8_t> out;
	put_u32(out, uint32_t(entries.size()));
	BitWriter bits;
	for (LevelEntry e : entries) {
		bits.write(e.rep, 2);
		bits.write(e.def, 2);
	}
	bits.align_to_byte();
	std::vector<uint8_t> packed = bits.take();
	out.insert(out.end(), packed.begin(), packed.end());
	return out;
}

std::vector<LevelEntry> parse_levels_page(std::span<const uint8_t> bytes) {
	Cursor in(bytes);
	uint32_t n = in.u32();
	if (bytes.size() - 4 != (uint64_t(n) * 4 + 7) / 8) {
		throw CorruptionError("levels page size does not match its entry count");
	}
	BitReader bits(bytes.subspan(4));
	std::vector<LevelEntry> entries;
	entries.reserve(n);
	for (uint32_t i = 0; i < n; ++i) {
		LevelEntry e;
		e.rep = uint8_t(bits.read(2));
		e.def = uint8_t(bits.read(2));
		entries.push_back(e);
	}
	return entries;
}

std::vector<uint8_t> serialize_id_page(std::span<const uint64_t> ids) {
	std::vector<uint8_t> out;
	out.reserve(ids.size() * 8);
	for (uint64_t id : ids) {
		put_u64(out, id);
	}
	return out;
}

std::vector<uint64_t> parse_id_page(std::span<const uint8_t> bytes) {
	if (bytes.size() % 8 != 0) {
		throw CorruptionError("id page size is not a multiple of 8");
	}
	Cursor in(bytes);
	std::vector<uint64_t> ids;
	ids.reserve(bytes.size() / 8);
	while (!in.done()) {
		ids.push_back(in.u64());
	}
	return ids;
}

} // namespace geocolumn
