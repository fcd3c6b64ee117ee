#pragma once

#include "geocolumn/container.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace geocolumn {

// Statistics over one page or one chunk. min/max ignore NaN; NaN values
// are tallied in null_count instead. With no non-NaN value the interval
// stays inverted (+inf, -inf).
struct StatsInfo {
	double min = std::numeric_limits<double>::infinity();
	double max = -std::numeric_limits<double>::infinity();
	uint64_t value_count = 0;
	uint64_t null_count = 0;

	bool has_range() const {
		return min <= max;
	}
	void add(double v);
	void fold(const StatsInfo &other);
	// Closed-interval overlap against [lo, hi] on this stat's axis.
	bool overlaps(double lo, double hi) const {
		return has_range() && min <= hi && lo <= max;
	}
};

struct PageInfo {
	uint64_t offset = 0; // absolute file offset of the stored bytes
	uint64_t stored_bytes = 0;
	uint64_t uncompressed_bytes = 0;
	uint64_t first_record = 0; // file-wide record ordinal
	uint64_t record_count = 0;
	uint8_t encoding = 0;    // PageEncoding for X/Y pages, 0 elsewhere
	uint8_t compression = 0; // Compression actually applied to this page
	// Repetition level continuing at the page start. Pages close on record
	// boundaries, so this is written as 0; the field is reserved for a
	// future layout that lets records straddle pages.
	uint8_t rep_phase = 0;
	StatsInfo stats;
};

struct ColumnChunkInfo {
	ColumnId column = ColumnId::Type;
	std::vector<PageInfo> pages;
	StatsInfo stats; // fold of the page stats
};

struct RowGroupInfo {
	uint64_t first_record = 0;
	uint64_t record_count = 0;
	uint64_t offset = 0;      // absolute offset of the first page
	uint64_t byte_length = 0; // sum of stored page bytes
	std::vector<ColumnChunkInfo> chunks;

	const ColumnChunkInfo *find_chunk(ColumnId id) const;
};

struct Footer {
	uint32_t version = kFormatVersion;
	bool has_ids = false;
	uint8_t compression = 0; // requested Compression
	uint8_t sort = 0;        // SortCurve applied upstream
	uint8_t encoding = 0;    // requested PageEncoding for coordinates
	uint64_t record_count = 0;
	uint64_t page_size = 0;
	uint64_t batch_size = 0;
	Envelope bbox; // global, inverted when the file holds no coordinates
	std::string writer; // creation metadata; never a timestamp, files must be reproducible
	std::vector<RowGroupInfo> row_groups;
};

std::vector<uint8_t> serialize_footer(const Footer &footer);
Footer parse_footer(std::span<const uint8_t> bytes);

} // namespace geocolumn
