#include "geocolumn/compress.hpp"

#include "geocolumn/error.hpp"

#include <zlib.h>

namespace geocolumn {

std::vector<uint8_t> deflate_bytes(std::span<const uint8_t> raw) {
	uLongf bound = compressBound(uLong(raw.size()));
	std::vector<uint8_t> out(bound);
	int rc = compress2(out.data(), &bound, raw.data(), uLong(raw.size()), 6);
	if (rc != Z_OK) {
		throw Error("deflate failed with zlib status " + std::to_string(rc));
	}
	out.resize(bound);
	return out;
}

std::vector<uint8_t> inflate_bytes(std::span<const uint8_t> compressed, size_t expected_size) {
	std::vector<uint8_t> out(expected_size);
	uLongf got = uLongf(expected_size);
	int rc = uncompress(out.data(), &got, compressed.data(), uLong(compressed.size()));
	if (rc != Z_OK || got != expected_size) {
		throw CorruptionError("page failed to inflate to its declared size");
	}
	return out;
}

} // namespace geocolumn
