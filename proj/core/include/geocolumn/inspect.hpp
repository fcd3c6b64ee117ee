#pragma once

#include "geocolumn/footer.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace geocolumn {

// Width distribution of the zigzag deltas a coordinate column would feed the
// codec: deltas restart at every page, exactly as the encoder sees them.
// exact[n] counts deltas whose zigzag needs exactly n significant bits;
// at_least[n] is the suffix sum (how many need n bits or more).
struct DeltaBitsReport {
	uint64_t delta_count = 0;
	std::array<uint64_t, 65> exact {};
	std::array<uint64_t, 65> at_least {};
	double mean_bits = 0.0;

	// Recomputes at_least and mean_bits after exact/delta_count changed.
	void finish();
};

struct ChunkDeltaReport {
	size_t row_group = 0;
	uint8_t column = 0;
	DeltaBitsReport deltas;
};

struct InspectReport {
	std::string path;
	uint64_t file_size = 0;
	uint64_t footer_bytes = 0;
	// Page bytes between the leading magic and the footer.
	uint64_t data_bytes = 0;
	Footer footer;
	DeltaBitsReport x_deltas;
	DeltaBitsReport y_deltas;
	std::vector<ChunkDeltaReport> chunk_deltas;
};

// Reads the whole file: footer for sizes/stats/flags, every coordinate page
// decoded to rebuild the delta-width histograms.
InspectReport inspect_file(const std::string &path);

std::string to_text(const InspectReport &report);
std::string to_json(const InspectReport &report);

} // namespace geocolumn
