#pragma once

#include "geocolumn/rle.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace geocolumn {

// Per-column page payload framing. Coordinate pages live in fp_delta.hpp;
// everything here is byte-aligned little-endian.

// A repetition/definition level pair, four bits on disk.
struct LevelEntry {
	uint8_t rep = 0;
	uint8_t def = 0;
};
inline bool operator==(LevelEntry a, LevelEntry b) {
	return a.rep == b.rep && a.def == b.def;
}

// [u32 run count][u64 count, u8 code]...
std::vector<uint8_t> serialize_type_page(std::span<const TypeRun> runs);
std::vector<TypeRun> parse_type_page(std::span<const uint8_t> bytes);

// [u32 entry count][packed entries], two bits rep then two bits def,
// LSB-first, zero-padded to a whole byte.
std::vector<uint8_t> serialize_levels_page(std::span<const LevelEntry> entries);
std::vector<LevelEntry> parse_levels_page(std::span<const uint8_t> bytes);

// Plain u64 sequence numbers, one per record.
std::vector<uint8_t> serialize_id_page(std::span<const uint64_t> ids);
std::vector<uint64_t> parse_id_page(std::span<const uint8_t> bytes);

} // namespace geocolumn
