#pragma once

#include "geocolumn/fp_delta.hpp"
#include "geocolumn/geometry.hpp"
#include "geocolumn/sfc.hpp"

#include <cstdint>
#include <string>

namespace geocolumn {

inline constexpr char kMagic[4] = {'S', 'P', 'Q', 'F'};
inline constexpr uint32_t kFormatVersion = 1;

enum class ColumnId : uint8_t {
	Type = 0,
	Levels = 1,
	X = 2,
	Y = 3,
	Id = 4,
};

enum class Compression : uint8_t {
	None = 0,
	Deflate = 1,
};

enum class InvalidPolicy : uint8_t {
	Abort = 0,
	Skip = 1,
};

// A query rectangle is an axis-aligned envelope; intersection tests use
// closed intervals on both sides, matching [min,max] page statistics.
using QueryRect = Envelope;

struct WriterOptions {
	uint64_t page_size = 1ull << 20;        // uncompressed payload target per page
	uint64_t row_group_bytes = 64ull << 20; // row group closes at this estimate
	uint64_t batch_size = 1'000'000;        // records per sort batch and row-group cap
	Compression compression = Compression::None;
	SortCurve sort = SortCurve::None; // applied by write_file, echoed in the footer
	PageEncoding encoding = PageEncoding::FpDelta; // Raw pins every coordinate page raw
	bool include_ids = false;
	InvalidPolicy on_invalid = InvalidPolicy::Abort;
};

struct WriteSummary {
	uint64_t records = 0;
	uint64_t skipped = 0; // invalid records dropped under InvalidPolicy::Skip
	uint64_t row_groups = 0;
	uint64_t pages = 0;
	uint64_t file_bytes = 0;
	uint64_t footer_bytes = 0;
	// Stored (post-compression) payload bytes per column id, indexed 0..4.
	uint64_t column_bytes[5] = {0, 0, 0, 0, 0};
};

struct QueryStats {
	uint64_t row_groups_total = 0;
	uint64_t row_groups_selected = 0;
	// Coordinate (X and Y) pages only; TYPE/LEVELS/ID pages follow the
	// selected record ranges and are not independently prunable.
	uint64_t pages_total = 0;
	uint64_t pages_selected = 0;
	uint64_t bytes_read = 0; // stored bytes of every page actually fetched
	uint64_t records_scanned = 0;
	uint64_t records_matched = 0;
};

} // namespace geocolumn
