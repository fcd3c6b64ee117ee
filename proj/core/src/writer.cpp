#include "geocolumn/writer.hpp"

#include "geocolumn/compress.hpp"
#include "geocolumn/error.hpp"

#include <algorithm>
#include <numeric>

namespace geocolumn {

namespace {

// Worst-case payload budgets per page. Coordinates cost 8 bytes raw (the
// delta form is never larger, or the encoder falls back); level entries
// pack two per byte; the record cap keeps plain-u64 ID pages inside the
// target. Pages close before any budget would be exceeded, so actual
// payloads never overshoot the target. The TYPE column paginates
// separately, by runs.
struct PageBudget {
	uint64_t coords;
	uint64_t records;
	uint64_t levels;

	explicit PageBudget(uint64_t page_size) {
		uint64_t ps = std::max<uint64_t>(page_size, 16);
		coords = std::max<uint64_t>(1, (ps - 1) / 8);
		records = std::max<uint64_t>(1, (ps - 4) / 9);
		levels = std::max<uint64_t>(1, (ps - 4) * 2);
	}
};

struct PageSlice {
	size_t record_begin, record_end;
	size_t coord_begin, coord_end;
	size_t level_begin, level_end;
};

} // namespace

FileWriter::FileWriter(const std::string &path, WriterOptions options)
    : options_(options), path_(path), out_(path, std::ios::binary | std::ios::trunc) {
	if (!out_) {
		throw IoError("cannot open " + path + " for writing");
	}
	write_bytes(reinterpret_cast<const uint8_t *>(kMagic), 4);
}

FileWriter::~FileWriter() = default;

void FileWriter::write_bytes(const uint8_t *data, size_t n) {
	out_.write(reinterpret_cast<const char *>(data), std::streamsize(n));
	if (!out_) {
		throw IoError("write failure on " + path_);
	}
	offset_ += n;
}

void FileWriter::add(const Geometry &g) {
	ColumnarGeometry col;
	try {
		col = to_columnar(g);
	} catch (const InvalidGeometryError &) {
		if (options_.on_invalid == InvalidPolicy::Skip) {
			++summary_.skipped;
			return;
		}
		throw;
	}
	add_columnar(col);
}

void FileWriter::add_columnar(const ColumnarGeometry &col) {
	if (finished_) {
		throw Error("writer already finished");
	}
	types_.push_back(col.type);
	uint32_t coords = 0;
	for (const LeveledCoordinate &v : col.values) {
		levels_.push_back({v.rep_level, v.def_level});
		if (v.def_level == 2) {
			xs_.push_back(v.coord.x);
			ys_.push_back(v.coord.y);
			footer_.bbox.expand(v.coord);
			++coords;
		}
	}
	record_coords_.push_back(coords);
	record_levels_.push_back(uint32_t(col.values.size()));
	++next_record_;

	buffered_estimate_ += uint64_t(coords) * 16 + col.values.size() / 2 + 9 +
	                      (options_.include_ids ? 8 : 0);
	if (types_.size() >= options_.batch_size || buffered_estimate_ >= options_.row_group_bytes) {
		flush_row_group();
	}
}

void FileWriter::write_page(ColumnChunkInfo &chunk, std::vector<uint8_t> payload, PageInfo info) {
	info.uncompressed_bytes = payload.size();
	info.compression = uint8_t(Compression::None);
	if (options_.compression == Compression::Deflate) {
		std::vector<uint8_t> packed = deflate_bytes(payload);
		if (packed.size() < payload.size()) {
			payload = std::move(packed);
			info.compression = uint8_t(Compression::Deflate);
		}
	}
	info.offset = offset_;
	info.stored_bytes = payload.size();
	write_bytes(payload.data(), payload.size());

	chunk.stats.fold(info.stats);
	chunk.pages.push_back(info);
	summary_.column_bytes[uint8_t(chunk.column)] += info.stored_bytes;
	++summary_.pages;
}

void FileWriter::flush_row_group() {
	if (types_.empty()) {
		return;
	}

	RowGroupInfo rg;
	rg.record_count = types_.size();
	rg.first_record = next_record_ - rg.record_count;
	rg.offset = offset_;

	// Shared page breaks: every column slices its values on the same
	// record boundaries, so page i of X pairs with page i of Y and the
	// covering TYPE/LEVELS/ID pages are the i-th of their chunks.
	const PageBudget budget(options_.page_size);
	std::vector<PageSlice> slices;
	{
		size_t rb = 0, cb = 0, lb = 0;
		size_t coord_pos = 0, level_pos = 0;
		uint64_t coords = 0, lvls = 0;
		for (size_t r = 0; r < types_.size(); ++r) {
			uint64_t c = record_coords_[r];
			uint64_t l = record_levels_[r];
			bool overflow = coords + c > budget.coords || (r - rb) + 1 > budget.records ||
			                lvls + l > budget.levels;
			if (r > rb && overflow) {
				slices.push_back({rb, r, cb, coord_pos, lb, level_pos});
				rb = r;
				cb = coord_pos;
				lb = level_pos;
				coords = 0;
				lvls = 0;
			}
			coords += c;
			lvls += l;
			coord_pos += c;
			level_pos += l;
		}
		slices.push_back({rb, types_.size(), cb, coord_pos, lb, level_pos});
	}

	auto base_info = [&](const PageSlice &s) {
		PageInfo info;
		info.first_record = rg.first_record + s.record_begin;
		info.record_count = s.record_end - s.record_begin;
		return info;
	};

	// The TYPE column ignores the shared slices and paginates by runs: a
	// single-type row group collapses to one run, so the chunk stays a
	// handful of bytes however many records it spans.
	ColumnChunkInfo type_chunk;
	type_chunk.column = ColumnId::Type;
	{
		std::vector<TypeRun> runs = rle_encode_types(types_);
		const uint64_t max_runs =
		    std::max<uint64_t>(1, (std::max<uint64_t>(options_.page_size, 16) - 4) / 9);
		uint64_t record = 0;
		for (size_t i = 0; i < runs.size();) {
			size_t j = std::min(runs.size(), i + size_t(max_runs));
			std::span<const TypeRun> page_runs(runs.data() + i, j - i);
			PageInfo info;
			info.first_record = rg.first_record + record;
			for (const TypeRun &run : page_runs) {
				info.record_count += run.count;
				info.stats.min = std::min(info.stats.min, double(uint8_t(run.value)));
				info.stats.max = std::max(info.stats.max, double(uint8_t(run.value)));
				info.stats.value_count += run.count;
			}
			record += info.record_count;
			write_page(type_chunk, serialize_type_page(page_runs), info);
			i = j;
		}
	}

	ColumnChunkInfo level_chunk;
	level_chunk.column = ColumnId::Levels;
	for (const PageSlice &s : slices) {
		PageInfo info = base_info(s);
		std::span<const LevelEntry> entries =
		    std::span(levels_).subspan(s.level_begin, s.level_end - s.level_begin);
		for (LevelEntry e : entries) {
			info.stats.add(double(e.rep << 2 | e.def));
		}
		write_page(level_chunk, serialize_levels_page(entries), info);
	}

	auto coord_chunk = [&](ColumnId id, const std::vector<double> &values) {
		ColumnChunkInfo chunk;
		chunk.column = id;
		for (const PageSlice &s : slices) {
			PageInfo info = base_info(s);
			std::span<const double> page_values =
			    std::span(values).subspan(s.coord_begin, s.coord_end - s.coord_begin);
			for (double v : page_values) {
				info.stats.add(v);
			}
			EncodedPage encoded = encode_coordinate_page(page_values, options_.encoding);
			info.encoding = uint8_t(encoded.encoding);
			write_page(chunk, std::move(encoded.bytes), info);
		}
		return chunk;
	};
	ColumnChunkInfo x_chunk = coord_chunk(ColumnId::X, xs_);
	ColumnChunkInfo y_chunk = coord_chunk(ColumnId::Y, ys_);

	rg.chunks.push_back(std::move(type_chunk));
	rg.chunks.push_back(std::move(level_chunk));
	rg.chunks.push_back(std::move(x_chunk));
	rg.chunks.push_back(std::move(y_chunk));

	if (options_.include_ids) {
		ColumnChunkInfo id_chunk;
		id_chunk.column = ColumnId::Id;
		for (const PageSlice &s : slices) {
			PageInfo info = base_info(s);
			std::vector<uint64_t> ids(info.record_count);
			std::iota(ids.begin(), ids.end(), info.first_record);
			for (uint64_t id : ids) {
				info.stats.add(double(id));
			}
			write_page(id_chunk, serialize_id_page(ids), info);
		}
		rg.chunks.push_back(std::move(id_chunk));
	}

	rg.byte_length = offset_ - rg.offset;
	footer_.row_groups.push_back(std::move(rg));

	types_.clear();
	levels_.clear();
	xs_.clear();
	ys_.clear();
	record_coords_.clear();
	record_levels_.clear();
	buffered_estimate_ = 0;
}

WriteSummary FileWriter::finish() {
	if (finished_) {
		throw Error("writer already finished");
	}
	flush_row_group();

	footer_.record_count = next_record_;
	footer_.has_ids = options_.include_ids;
	footer_.compression = uint8_t(options_.compression);
	footer_.sort = uint8_t(options_.sort);
	footer_.encoding = uint8_t(options_.encoding);
	footer_.page_size = options_.page_size;
	footer_.batch_size = options_.batch_size;
	footer_.writer = "geocolumn 1.0.0";

	std::vector<uint8_t> bytes = serialize_footer(footer_);
	write_bytes(bytes.data(), bytes.size());
	uint8_t trailer[8];
	for (int i = 0; i < 4; ++i) {
		trailer[i] = uint8_t(uint32_t(bytes.size()) >> (8 * i));
	}
	std::copy(kMagic, kMagic + 4, trailer + 4);
	write_bytes(trailer, 8);

	out_.flush();
	if (!out_) {
		throw IoError("flush failure on " + path_);
	}
	out_.close();
	finished_ = true;

	summary_.records = next_record_;
	summary_.row_groups = footer_.row_groups.size();
	summary_.file_bytes = offset_;
	summary_.footer_bytes = bytes.size();
	return summary_;
}

WriteSummary write_file(const std::string &path, std::vector<Geometry> records,
                        const WriterOptions &options) {
	FileWriter writer(path, options);
	BatchSorter sorter(options.sort, options.batch_size,
	                   [&writer](Geometry &&g) { writer.add(g); });
	GeometrySink sink = flattening_sink([&sorter](Geometry &&g) { sorter.add(std::move(g)); });
	for (Geometry &g : records) {
		sink(std::move(g));
	}
	sorter.finish();
	return writer.finish();
}

GeometrySink flattening_sink(GeometrySink inner) {
	return [inner = std::move(inner)](Geometry &&g) {
		if (g.is_collection()) {
			for (Geometry &member : flatten_collection(g.get<GeometryCollection>())) {
				inner(std::move(member));
			}
		} else {
			inner(std::move(g));
		}
	};
}

} // namespace geocolumn
