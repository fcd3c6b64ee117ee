#pragma once

#include "geocolumn/container.hpp"
#include "geocolumn/footer.hpp"
#include "geocolumn/pages.hpp"

#include <fstream>
#include <functional>
#include <string>
#include <vector>

namespace geocolumn {

// Result of stats-only page selection. `pairs` indexes into the X
// (equivalently Y) page list of the row group; the two lists always
// paginate on the same record boundaries.
struct PrunePlan {
	struct GroupPlan {
		size_t row_group = 0;
		std::vector<size_t> pairs;
	};
	std::vector<GroupPlan> groups;
	uint64_t pages_total = 0;    // X plus Y pages in the file
	uint64_t pages_selected = 0; // both members of each selected pair
	uint64_t row_groups_selected = 0;
};

// A page pair survives iff its X interval overlaps [q.min_x, q.max_x] and
// its Y interval overlaps [q.min_y, q.max_y]; pages holding NaN
// coordinates are never pruned. Whole row groups are skipped first via
// chunk stats. Selection is conservative: no record whose MBR intersects q
// is ever dropped.
PrunePlan prune_pages(const Footer &footer, const QueryRect &q);

struct QueryResult {
	std::vector<Geometry> geometries;
	std::vector<uint64_t> ids; // record ordinals, parallel to geometries
	QueryStats stats;
};

// Reads a container file. One instance owns one file handle and is
// single-caller-at-a-time; open more readers for concurrent queries.
class FileReader {
public:
	explicit FileReader(const std::string &path);

	const Footer &footer() const {
		return footer_;
	}
	uint64_t record_count() const {
		return footer_.record_count;
	}
	uint64_t file_size() const {
		return file_size_;
	}
	uint64_t footer_size() const {
		return footer_size_;
	}

	// Every record in stored order, with its ordinal.
	void read_all(const std::function<void(Geometry &&, uint64_t id)> &emit);
	std::vector<Geometry> read_all();

	// Records whose geometry MBR intersects q (closed intervals), in
	// stored order. Pruned pages are never fetched.
	QueryResult range_query(const QueryRect &q);

	// Stored bytes of one page, decompressed and size-checked.
	std::vector<uint8_t> page_payload(const PageInfo &page);

private:
	struct DecodedRange {
		uint64_t first = 0;
		uint64_t count = 0;
		std::vector<GeometryType> types;
		std::vector<LevelEntry> entries; // exactly the range's level entries
		std::vector<double> xs;
		std::vector<double> ys;
		std::vector<uint64_t> ids; // empty when the file has no id column
	};

	DecodedRange decode_range(const RowGroupInfo &rg, uint64_t first, uint64_t count,
	                          QueryStats *stats);
	void emit_range(const DecodedRange &range,
	                const std::function<void(Geometry &&, uint64_t id)> &emit);

	std::string path_;
	std::ifstream in_;
	uint64_t file_size_ = 0;
	uint64_t footer_size_ = 0;
	Footer footer_;
};

} // namespace geocolumn
