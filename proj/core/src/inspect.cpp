#include "geocolumn/inspect.hpp"

#include "geocolumn/error.hpp"
#include "geocolumn/fp_delta.hpp"
#include "geocolumn/reader.hpp"
#include "geocolumn/wkt.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace geocolumn {

using json = nlohmann::ordered_json;

void DeltaBitsReport::finish() {
	uint64_t running = 0;
	double weighted = 0.0;
	for (int n = 64; n >= 0; --n) {
		running += exact[size_t(n)];
		at_least[size_t(n)] = running;
		weighted += double(n) * double(exact[size_t(n)]);
	}
	delta_count = running;
	mean_bits = running == 0 ? 0.0 : weighted / double(running);
}

namespace {

const char *column_name(uint8_t column) {
	switch (ColumnId(column)) {
	case ColumnId::Type: return "type";
	case ColumnId::Levels: return "levels";
	case ColumnId::X: return "x";
	case ColumnId::Y: return "y";
	case ColumnId::Id: return "id";
	}
	return "?";
}

const char *compression_name(uint8_t code) {
	return code == uint8_t(Compression::Deflate) ? "deflate" : "none";
}

const char *encoding_name(uint8_t code) {
	return code == uint8_t(PageEncoding::FpDelta) ? "fp-delta" : "raw";
}

const char *sort_name(uint8_t code) {
	switch (SortCurve(code)) {
	case SortCurve::None: return "none";
	case SortCurve::Z: return "z";
	case SortCurve::Hilbert: return "hilbert";
	}
	return "?";
}

void accumulate_deltas(const std::vector<double> &values, DeltaBitsReport &out) {
	DeltaScan scan = scan_deltas(values);
	for (size_t n = 0; n < out.exact.size(); ++n) {
		out.exact[n] += scan.exact_bits[n];
	}
}

json stats_json(const StatsInfo &stats) {
	json j;
	j["value_count"] = stats.value_count;
	j["null_count"] = stats.null_count;
	if (stats.has_range()) {
		j["min"] = stats.min;
		j["max"] = stats.max;
	} else {
		j["min"] = nullptr;
		j["max"] = nullptr;
	}
	return j;
}

json deltas_json(const DeltaBitsReport &report) {
	json j;
	j["delta_count"] = report.delta_count;
	j["mean_bits"] = report.mean_bits;
	j["exact_bits"] = report.exact;
	j["at_least_bits"] = report.at_least;
	return j;
}

std::string range_text(const StatsInfo &stats) {
	if (!stats.has_range()) {
		return "[empty]";
	}
	return "[" + format_double(stats.min) + ", " + format_double(stats.max) + "]";
}

} // namespace

InspectReport inspect_file(const std::string &path) {
	InspectReport report;
	report.path = path;

	FileReader reader(path);
	report.file_size = reader.file_size();
	report.footer_bytes = reader.footer_size();
	report.footer = reader.footer();

	for (size_t g = 0; g < report.footer.row_groups.size(); ++g) {
		const RowGroupInfo &rg = report.footer.row_groups[g];
		for (const ColumnChunkInfo &chunk : rg.chunks) {
			for (const PageInfo &page : chunk.pages) {
				report.data_bytes += page.stored_bytes;
			}
			if (chunk.column != ColumnId::X && chunk.column != ColumnId::Y) {
				continue;
			}
			ChunkDeltaReport cd;
			cd.row_group = g;
			cd.column = uint8_t(chunk.column);
			DeltaBitsReport &total = chunk.column == ColumnId::X ? report.x_deltas : report.y_deltas;
			for (const PageInfo &page : chunk.pages) {
				auto payload = reader.page_payload(page);
				std::vector<double> values;
				try {
					values = decode_coordinate_page(payload, size_t(page.stats.value_count));
				} catch (const Error &e) {
					throw CorruptionError(std::string(column_name(cd.column)) + " page for records " +
					                      std::to_string(page.first_record) + ".." +
					                      std::to_string(page.first_record + page.record_count) + ": " +
					                      e.what());
				}
				accumulate_deltas(values, cd.deltas);
				accumulate_deltas(values, total);
			}
			cd.deltas.finish();
			report.chunk_deltas.push_back(std::move(cd));
		}
	}
	report.x_deltas.finish();
	report.y_deltas.finish();
	return report;
}

std::string to_json(const InspectReport &report) {
	json j;
	j["path"] = report.path;
	j["file_size"] = report.file_size;
	j["footer_bytes"] = report.footer_bytes;
	j["data_bytes"] = report.data_bytes;
	j["version"] = report.footer.version;
	j["record_count"] = report.footer.record_count;
	j["has_ids"] = report.footer.has_ids;
	j["sort"] = sort_name(report.footer.sort);
	j["encoding"] = encoding_name(report.footer.encoding);
	j["compression"] = compression_name(report.footer.compression);
	j["page_size"] = report.footer.page_size;
	j["batch_size"] = report.footer.batch_size;
	j["writer"] = report.footer.writer;
	if (report.footer.bbox.valid()) {
		json bbox;
		bbox["min_x"] = report.footer.bbox.min_x;
		bbox["min_y"] = report.footer.bbox.min_y;
		bbox["max_x"] = report.footer.bbox.max_x;
		bbox["max_y"] = report.footer.bbox.max_y;
		j["bbox"] = bbox;
	} else {
		j["bbox"] = nullptr;
	}

	json columns;
	columns["x"] = deltas_json(report.x_deltas);
	columns["y"] = deltas_json(report.y_deltas);
	j["columns"] = columns;

	json groups = json::array();
	for (size_t g = 0; g < report.footer.row_groups.size(); ++g) {
		const RowGroupInfo &rg = report.footer.row_groups[g];
		json jg;
		jg["first_record"] = rg.first_record;
		jg["record_count"] = rg.record_count;
		jg["offset"] = rg.offset;
		jg["byte_length"] = rg.byte_length;
		json chunks = json::array();
		for (const ColumnChunkInfo &chunk : rg.chunks) {
			json jc;
			jc["column"] = column_name(uint8_t(chunk.column));
			uint64_t stored = 0;
			uint64_t raw = 0;
			json pages = json::array();
			for (const PageInfo &page : chunk.pages) {
				stored += page.stored_bytes;
				raw += page.uncompressed_bytes;
				json jp;
				jp["offset"] = page.offset;
				jp["stored_bytes"] = page.stored_bytes;
				jp["uncompressed_bytes"] = page.uncompressed_bytes;
				jp["first_record"] = page.first_record;
				jp["record_count"] = page.record_count;
				if (chunk.column == ColumnId::X || chunk.column == ColumnId::Y) {
					jp["encoding"] = encoding_name(page.encoding);
				}
				jp["compression"] = compression_name(page.compression);
				jp["stats"] = stats_json(page.stats);
				pages.push_back(std::move(jp));
			}
			jc["stored_bytes"] = stored;
			jc["uncompressed_bytes"] = raw;
			jc["stats"] = stats_json(chunk.stats);
			jc["pages"] = std::move(pages);
			for (const ChunkDeltaReport &cd : report.chunk_deltas) {
				if (cd.row_group == g && cd.column == uint8_t(chunk.column)) {
					jc["deltas"] = deltas_json(cd.deltas);
				}
			}
			chunks.push_back(std::move(jc));
		}
		jg["chunks"] = std::move(chunks);
		groups.push_back(std::move(jg));
	}
	j["row_groups"] = std::move(groups);
	return j.dump(2) + "\n";
}

std::string to_text(const InspectReport &report) {
	std::ostringstream out;
	out << "file: " << report.path << "\n";
	out << "size: " << report.file_size << " bytes (pages " << report.data_bytes << ", footer "
	    << report.footer_bytes << ", framing 12)\n";
	out << "version " << report.footer.version << ", " << report.footer.record_count
	    << " records, sort " << sort_name(report.footer.sort) << ", encoding "
	    << encoding_name(report.footer.encoding) << ", compression "
	    << compression_name(report.footer.compression) << ", ids "
	    << (report.footer.has_ids ? "yes" : "no") << "\n";
	out << "page size " << report.footer.page_size << ", batch size " << report.footer.batch_size
	    << ", writer \"" << report.footer.writer << "\"\n";
	if (report.footer.bbox.valid()) {
		out << "bbox: [" << format_double(report.footer.bbox.min_x) << ", "
		    << format_double(report.footer.bbox.min_y) << "] .. ["
		    << format_double(report.footer.bbox.max_x) << ", "
		    << format_double(report.footer.bbox.max_y) << "]\n";
	} else {
		out << "bbox: none\n";
	}

	for (size_t g = 0; g < report.footer.row_groups.size(); ++g) {
		const RowGroupInfo &rg = report.footer.row_groups[g];
		out << "\nrow group " << g << ": records " << rg.first_record << ".."
		    << rg.first_record + rg.record_count << ", " << rg.byte_length << " bytes\n";
		for (const ColumnChunkInfo &chunk : rg.chunks) {
			uint64_t stored = 0;
			uint64_t raw = 0;
			size_t delta_pages = 0;
			for (const PageInfo &page : chunk.pages) {
				stored += page.stored_bytes;
				raw += page.uncompressed_bytes;
				if (page.encoding == uint8_t(PageEncoding::FpDelta)) {
					++delta_pages;
				}
			}
			out << "  " << column_name(uint8_t(chunk.column)) << ": " << chunk.pages.size()
			    << (chunk.pages.size() == 1 ? " page, " : " pages, ") << stored << " stored / "
			    << raw << " raw bytes, values " << chunk.stats.value_count << ", nulls "
			    << chunk.stats.null_count << ", range " << range_text(chunk.stats);
			if (chunk.column == ColumnId::X || chunk.column == ColumnId::Y) {
				out << ", fp-delta pages " << delta_pages << "/" << chunk.pages.size();
			}
			out << "\n";
		}
	}

	auto histogram = [&out](const char *name, const DeltaBitsReport &d) {
		char mean[32];
		std::snprintf(mean, sizeof mean, "%.2f", d.mean_bits);
		out << "\n" << name << " deltas: " << d.delta_count << ", mean " << mean << " bits\n";
		out << "  bits      exact   at-least\n";
		for (size_t n = 0; n < d.exact.size(); ++n) {
			if (d.exact[n] == 0) {
				continue;
			}
			out << "  ";
			std::string bits = std::to_string(n);
			out << std::string(4 - bits.size(), ' ') << bits;
			std::string exact = std::to_string(d.exact[n]);
			out << std::string(11 - std::min<size_t>(11, exact.size()), ' ') << exact;
			std::string al = std::to_string(d.at_least[n]);
			out << std::string(11 - std::min<size_t>(11, al.size()), ' ') << al << "\n";
		}
	};
	histogram("x", report.x_deltas);
	histogram("y", report.y_deltas);
	return out.str();
}

} // namespace geocolumn
