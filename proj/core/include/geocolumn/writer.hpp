#pragma once

#include "geocolumn/container.hpp"
#include "geocolumn/footer.hpp"
#include "geocolumn/pages.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace geocolumn {

// Streams records into a container file. Records are buffered per row
// group (closing at options.batch_size records or ~options.row_group_bytes,
// whichever first), paginated on record boundaries, encoded column by
// column, and flushed; the footer lands when finish() is called. A writer
// abandoned without finish() leaves a file with no footer, which readers
// reject.
//
// Sorting is not applied here; wire a BatchSorter in front (write_file does
// exactly that).
class FileWriter {
public:
	FileWriter(const std::string &path, WriterOptions options = {});
	~FileWriter();
	FileWriter(const FileWriter &) = delete;
	FileWriter &operator=(const FileWriter &) = delete;

	// Appends one record. GeometryCollections are not records; flatten
	// first (see flattening_sink). Invalid geometries throw, or are
	// counted and dropped under InvalidPolicy::Skip.
	void add(const Geometry &g);

	void add_columnar(const ColumnarGeometry &col);

	WriteSummary finish();

	uint64_t records_added() const {
		return next_record_;
	}

private:
	void flush_row_group();
	void write_page(ColumnChunkInfo &chunk, std::vector<uint8_t> payload, PageInfo info);
	void write_bytes(const uint8_t *data, size_t n);

	WriterOptions options_;
	std::string path_;
	std::ofstream out_;
	uint64_t offset_ = 0;
	bool finished_ = false;

	// Current row group, already columnar.
	std::vector<GeometryType> types_;
	std::vector<LevelEntry> levels_;
	std::vector<double> xs_;
	std::vector<double> ys_;
	std::vector<uint32_t> record_coords_; // coordinate count per record
	std::vector<uint32_t> record_levels_; // level entries per record
	uint64_t buffered_estimate_ = 0;

	Footer footer_;
	WriteSummary summary_;
	uint64_t next_record_ = 0;
};

// Sort (per options.sort/batch_size) and write a whole record list.
WriteSummary write_file(const std::string &path, std::vector<Geometry> records,
                        const WriterOptions &options = {});

// Wraps a sink so GeometryCollection records fan out into their flattened
// members; everything else passes through unchanged.
GeometrySink flattening_sink(GeometrySink inner);

} // namespace geocolumn
