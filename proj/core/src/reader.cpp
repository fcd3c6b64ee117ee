#include "geocolumn/reader.hpp"

#include "geocolumn/compress.hpp"
#include "geocolumn/error.hpp"
#include "geocolumn/rle.hpp"

#include <cstring>

namespace geocolumn {

PrunePlan prune_pages(const Footer &footer, const QueryRect &q) {
	PrunePlan plan;
	for (size_t g = 0; g < footer.row_groups.size(); ++g) {
		const RowGroupInfo &rg = footer.row_groups[g];
		const ColumnChunkInfo *xc = rg.find_chunk(ColumnId::X);
		const ColumnChunkInfo *yc = rg.find_chunk(ColumnId::Y);
		if (!xc || !yc) {
			throw CorruptionError("row group lacks coordinate chunks");
		}
		if (xc->pages.size() != yc->pages.size()) {
			throw CorruptionError("x and y chunks have different page counts");
		}
		plan.pages_total += xc->pages.size() + yc->pages.size();

		bool group_nan = xc->stats.null_count > 0 || yc->stats.null_count > 0;
		if (!group_nan && !(xc->stats.overlaps(q.min_x, q.max_x) && yc->stats.overlaps(q.min_y, q.max_y))) {
			continue;
		}
		PrunePlan::GroupPlan gp;
		gp.row_group = g;
		for (size_t i = 0; i < xc->pages.size(); ++i) {
			const PageInfo &xp = xc->pages[i];
			const PageInfo &yp = yc->pages[i];
			if (xp.first_record != yp.first_record || xp.record_count != yp.record_count) {
				throw CorruptionError("x and y pages cover different records");
			}
			bool nan = xp.stats.null_count > 0 || yp.stats.null_count > 0;
			if (nan || (xp.stats.overlaps(q.min_x, q.max_x) && yp.stats.overlaps(q.min_y, q.max_y))) {
				gp.pairs.push_back(i);
			}
		}
		if (!gp.pairs.empty()) {
			plan.pages_selected += 2 * gp.pairs.size();
			++plan.row_groups_selected;
			plan.groups.push_back(std::move(gp));
		}
	}
	return plan;
}

FileReader::FileReader(const std::string &path) : path_(path), in_(path, std::ios::binary) {
	if (!in_) {
		throw IoError("cannot open " + path + " for reading");
	}
	in_.seekg(0, std::ios::end);
	file_size_ = uint64_t(in_.tellg());
	if (file_size_ < 12) {
		throw FormatError(path + " is too small to be a container file");
	}

	char head[4];
	in_.seekg(0);
	in_.read(head, 4);
	if (!in_ || std::memcmp(head, kMagic, 4) != 0) {
		throw FormatError(path + " does not start with the container magic");
	}

	uint8_t tail[8];
	in_.seekg(std::streamoff(file_size_ - 8));
	in_.read(reinterpret_cast<char *>(tail), 8);
	if (!in_ || std::memcmp(tail + 4, kMagic, 4) != 0) {
		throw FormatError(path + " does not end with the container magic");
	}
	uint32_t len = uint32_t(tail[0]) | uint32_t(tail[1]) << 8 | uint32_t(tail[2]) << 16 |
	               uint32_t(tail[3]) << 24;
	if (len > file_size_ - 12) {
		throw CorruptionError("footer length exceeds the file size");
	}
	footer_size_ = len;

	std::vector<uint8_t> bytes(len);
	in_.seekg(std::streamoff(file_size_ - 8 - len));
	in_.read(reinterpret_cast<char *>(bytes.data()), std::streamsize(len));
	if (!in_) {
		throw IoError("read failure on " + path);
	}
	footer_ = parse_footer(bytes);
}

std::vector<uint8_t> FileReader::page_payload(const PageInfo &page) {
	if (page.offset + page.stored_bytes > file_size_) {
		throw CorruptionError("page extends past the end of the file");
	}
	std::vector<uint8_t> stored(page.stored_bytes);
	in_.seekg(std::streamoff(page.offset));
	in_.read(reinterpret_cast<char *>(stored.data()), std::streamsize(stored.size()));
	if (!in_) {
		throw IoError("read failure on " + path_);
	}
	if (page.compression == uint8_t(Compression::Deflate)) {
		return inflate_bytes(stored, page.uncompressed_bytes);
	}
	if (page.compression != uint8_t(Compression::None)) {
		throw FormatError("unknown page compression code " + std::to_string(page.compression));
	}
	if (page.stored_bytes != page.uncompressed_bytes) {
		throw CorruptionError("uncompressed page declares two different sizes");
	}
	return stored;
}

namespace {

// Pages of one chunk covering records [first, first+count), in order,
// validated contiguous.
std::vector<const PageInfo *> covering_pages(const ColumnChunkInfo &chunk, uint64_t first,
                                             uint64_t count) {
	std::vector<const PageInfo *> pages;
	for (const PageInfo &p : chunk.pages) {
		if (p.first_record + p.record_count <= first || p.first_record >= first + count) {
			continue;
		}
		if (!pages.empty()) {
			const PageInfo *prev = pages.back();
			if (prev->first_record + prev->record_count != p.first_record) {
				throw CorruptionError("column pages are not contiguous in record order");
			}
		}
		pages.push_back(&p);
	}
	if (pages.empty() || pages.front()->first_record > first ||
	    pages.back()->first_record + pages.back()->record_count < first + count) {
		throw CorruptionError("column pages do not cover the requested records");
	}
	return pages;
}

} // namespace

FileReader::DecodedRange FileReader::decode_range(const RowGroupInfo &rg, uint64_t first,
                                                  uint64_t count, QueryStats *stats) {
	DecodedRange range;
	range.first = first;
	range.count = count;

	auto fetch = [&](const PageInfo &p) {
		if (stats) {
			stats->bytes_read += p.stored_bytes;
		}
		return page_payload(p);
	};

	const ColumnChunkInfo *type_chunk = rg.find_chunk(ColumnId::Type);
	const ColumnChunkInfo *level_chunk = rg.find_chunk(ColumnId::Levels);
	const ColumnChunkInfo *x_chunk = rg.find_chunk(ColumnId::X);
	const ColumnChunkInfo *y_chunk = rg.find_chunk(ColumnId::Y);
	if (!type_chunk || !level_chunk || !x_chunk || !y_chunk) {
		throw CorruptionError("row group lacks a required column chunk");
	}

	{
		std::vector<GeometryType> codes;
		uint64_t cover_first = 0;
		for (const PageInfo *p : covering_pages(*type_chunk, first, count)) {
			if (codes.empty()) {
				cover_first = p->first_record;
			}
			auto runs = parse_type_page(fetch(*p));
			auto page_codes = rle_decode_types(runs, p->record_count);
			codes.insert(codes.end(), page_codes.begin(), page_codes.end());
		}
		codes.erase(codes.begin(), codes.begin() + ptrdiff_t(first - cover_first));
		codes.resize(count);
		range.types = std::move(codes);
	}

	{
		std::vector<LevelEntry> entries;
		uint64_t cover_first = 0;
		for (const PageInfo *p : covering_pages(*level_chunk, first, count)) {
			if (entries.empty()) {
				cover_first = p->first_record;
			}
			auto page_entries = parse_levels_page(fetch(*p));
			entries.insert(entries.end(), page_entries.begin(), page_entries.end());
		}
		// Slice the entries of records [first, first+count): record starts
		// are the entries with repetition level 0.
		size_t begin = 0;
		uint64_t skip = first - cover_first;
		uint64_t seen = 0;
		size_t end = entries.size();
		uint64_t kept = 0;
		for (size_t i = 0; i < entries.size(); ++i) {
			if (entries[i].rep != 0) {
				continue;
			}
			if (seen == skip) {
				begin = i;
			}
			if (seen == skip + count) {
				end = i;
				break;
			}
			++seen;
			if (seen > skip) {
				++kept;
			}
		}
		if (seen < skip + count && kept < count) {
			throw CorruptionError("level pages hold fewer records than declared");
		}
		range.entries.assign(entries.begin() + ptrdiff_t(begin), entries.begin() + ptrdiff_t(end));
	}

	auto coords = [&](const ColumnChunkInfo &chunk) {
		std::vector<double> values;
		for (const PageInfo *p : covering_pages(chunk, first, count)) {
			if (p->first_record < first || p->first_record + p->record_count > first + count) {
				throw CorruptionError("coordinate page crosses the requested record range");
			}
			auto payload = fetch(*p);
			auto page_values = decode_coordinate_page(payload, size_t(p->stats.value_count));
			values.insert(values.end(), page_values.begin(), page_values.end());
		}
		return values;
	};
	range.xs = coords(*x_chunk);
	range.ys = coords(*y_chunk);
	if (range.xs.size() != range.ys.size()) {
		throw CorruptionError("x and y value counts differ");
	}

	if (footer_.has_ids) {
		const ColumnChunkInfo *id_chunk = rg.find_chunk(ColumnId::Id);
		if (!id_chunk) {
			throw CorruptionError("footer promises an id column that is missing");
		}
		std::vector<uint64_t> ids;
		uint64_t cover_first = 0;
		for (const PageInfo *p : covering_pages(*id_chunk, first, count)) {
			if (ids.empty()) {
				cover_first = p->first_record;
			}
			auto page_ids = parse_id_page(fetch(*p));
			if (page_ids.size() != p->record_count) {
				throw CorruptionError("id page count mismatch");
			}
			ids.insert(ids.end(), page_ids.begin(), page_ids.end());
		}
		ids.erase(ids.begin(), ids.begin() + ptrdiff_t(first - cover_first));
		ids.resize(count);
		range.ids = std::move(ids);
	}

	return range;
}

void FileReader::emit_range(const DecodedRange &range,
                            const std::function<void(Geometry &&, uint64_t id)> &emit) {
	size_t li = 0;
	size_t ci = 0;
	for (uint64_t r = 0; r < range.count; ++r) {
		if (li >= range.entries.size()) {
			throw CorruptionError("level stream ends before all records are assembled");
		}
		if (range.entries[li].rep != 0) {
			throw CorruptionError("record does not begin at repetition level 0");
		}
		ColumnarGeometry col;
		col.type = range.types[size_t(r)];
		do {
			LevelEntry e = range.entries[li];
			LeveledCoordinate v;
			v.rep_level = e.rep;
			v.def_level = e.def;
			if (e.def == 2) {
				if (ci >= range.xs.size()) {
					throw CorruptionError("coordinate stream exhausted mid-record");
				}
				v.coord = {range.xs[ci], range.ys[ci]};
				++ci;
			} else if (e.def != 0) {
				throw CorruptionError("definition level " + std::to_string(e.def) + " is not used");
			}
			col.values.push_back(v);
			++li;
		} while (li < range.entries.size() && range.entries[li].rep != 0);

		uint64_t id = range.ids.empty() ? range.first + r : range.ids[size_t(r)];
		emit(from_columnar(col), id);
	}
	if (li != range.entries.size() || ci != range.xs.size()) {
		throw CorruptionError("column lengths disagree after assembling all records");
	}
}

void FileReader::read_all(const std::function<void(Geometry &&, uint64_t id)> &emit) {
	for (const RowGroupInfo &rg : footer_.row_groups) {
		DecodedRange range = decode_range(rg, rg.first_record, rg.record_count, nullptr);
		emit_range(range, emit);
	}
}

std::vector<Geometry> FileReader::read_all() {
	std::vector<Geometry> out;
	out.reserve(size_t(footer_.record_count));
	read_all([&out](Geometry &&g, uint64_t) { out.push_back(std::move(g)); });
	return out;
}

QueryResult FileReader::range_query(const QueryRect &q) {
	QueryResult result;
	PrunePlan plan = prune_pages(footer_, q);
	result.stats.row_groups_total = footer_.row_groups.size();
	result.stats.row_groups_selected = plan.row_groups_selected;
	result.stats.pages_total = plan.pages_total;
	result.stats.pages_selected = plan.pages_selected;

	for (const PrunePlan::GroupPlan &gp : plan.groups) {
		const RowGroupInfo &rg = footer_.row_groups[gp.row_group];
		const ColumnChunkInfo *xc = rg.find_chunk(ColumnId::X);
		for (size_t pair : gp.pairs) {
			const PageInfo &xp = xc->pages[pair];
			DecodedRange range = decode_range(rg, xp.first_record, xp.record_count, &result.stats);
			emit_range(range, [&](Geometry &&g, uint64_t id) {
				++result.stats.records_scanned;
				if (envelope(g).intersects(q)) {
					result.geometries.push_back(std::move(g));
					result.ids.push_back(id);
					++result.stats.records_matched;
				}
			});
		}
	}
	return result;
}

} // namespace geocolumn
