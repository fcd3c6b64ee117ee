#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace geocolumn {

// zlib-wrapped deflate at a fixed level so output bytes are reproducible.
std::vector<uint8_t> deflate_bytes(std::span<const uint8_t> raw);

// Throws CorruptionError when the stream is damaged or does not inflate
// to exactly expected_size bytes.
std::vector<uint8_t> inflate_bytes(std::span<const uint8_t> compressed, size_t expected_size);

} // namespace geocolumn
