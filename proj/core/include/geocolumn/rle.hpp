#pragma once

#include "geocolumn/geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace geocolumn {

// One run of the type column. A whole chunk of same-type records collapses
// to a single run, so the column's cost is independent of record count.
struct TypeRun {
	uint64_t count = 0;
	GeometryType value = GeometryType::Empty;
};

// Maximal runs: adjacent runs always differ in value.
std::vector<TypeRun> rle_encode_types(std::span<const GeometryType> codes);

// Exact inverse. Throws CorruptionError when the runs do not sum to
// `count` exactly.
std::vector<GeometryType> rle_decode_types(std::span<const TypeRun> runs, uint64_t count);

} // namespace geocolumn
