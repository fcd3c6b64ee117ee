#include "geocolumn/rle.hpp"

#include "geocolumn/error.hpp"

namespace geocolumn {

std::vector<TypeRun> rle_encode_types(std::span<const GeometryType> codes) {
	std::vector<TypeRun> runs;
	for (GeometryType code : codes) {
		if (!runs.empty() && runs.back().value == code) {
			++runs.back().count;
		} else {
			runs.push_back({1, code});
		}
	}
	return runs;
}

std::vector<GeometryType> rle_decode_types(std::span<const TypeRun> runs, uint64_t count) {
	std::vector<GeometryType> codes;
	codes.reserve(count);
	for (const TypeRun &run : runs) {
		if (run.count == 0) {
			throw CorruptionError("type run with zero count");
		}
		if (run.count > count - codes.size()) {
			throw CorruptionError("type runs overflow the declared record count");
		}
		codes.insert(codes.end(), run.count, run.value);
	}
	if (codes.size() != count) {
		throw CorruptionError("type runs cover " + std::to_string(codes.size()) + " records, expected " +
		                      std::to_string(count));
	}
	return codes;
}

} // namespace geocolumn
