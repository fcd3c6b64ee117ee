#include <geocolumn/geocolumn.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace gc = geocolumn;

namespace {

int log_level() {
	static int level = [] {
		const char *env = std::getenv("GEOCOLUMN_LOG");
		std::string v = env ? env : "";
		if (v == "error") return 0;
		if (v == "info") return 2;
		if (v == "debug") return 3;
		return 1;
	}();
	return level;
}

void log_info(const std::string &msg) {
	if (log_level() >= 2) {
		std::cerr << "geocolumn: " << msg << "\n";
	}
}

enum class FileFormat { GeoJson, Wkt, Container };

FileFormat resolve_format(const std::string &path, const std::string &forced, const char *flag) {
	std::string key = forced;
	if (key.empty()) {
		auto dot = path.rfind('.');
		if (dot != std::string::npos) {
			key = path.substr(dot + 1);
		}
		for (char &c : key) {
			c = char(std::tolower(static_cast<unsigned char>(c)));
		}
	}
	if (key == "geojson" || key == "json") {
		return FileFormat::GeoJson;
	}
	if (key == "wkt" || key == "txt") {
		return FileFormat::Wkt;
	}
	if (key == "spqf") {
		return FileFormat::Container;
	}
	throw CLI::ValidationError(flag, "cannot tell the format of '" + path +
	                                     "', pass " + flag + " {geojson,wkt,spqf}");
}

void read_records(const std::string &path, FileFormat format, const gc::GeometrySink &sink) {
	switch (format) {
	case FileFormat::GeoJson:
		gc::read_geojson_file(path, sink);
		break;
	case FileFormat::Wkt:
		gc::read_wkt_file(path, sink);
		break;
	case FileFormat::Container: {
		gc::FileReader reader(path);
		reader.read_all([&sink](gc::Geometry &&g, uint64_t) { sink(std::move(g)); });
		break;
	}
	}
}

std::vector<gc::Geometry> load_records(const std::string &path, FileFormat format) {
	std::vector<gc::Geometry> records;
	read_records(path, format, [&records](gc::Geometry &&g) { records.push_back(std::move(g)); });
	return records;
}

const char *column_label(size_t id) {
	static const char *names[] = {"type", "levels", "x", "y", "id"};
	return names[id];
}

void print_write_summary(const gc::WriteSummary &s, bool has_ids) {
	std::cout << "records " << s.records;
	if (s.skipped > 0) {
		std::cout << " (" << s.skipped << " invalid skipped)";
	}
	std::cout << "\nfile bytes " << s.file_bytes << " (footer " << s.footer_bytes << ", row groups "
	          << s.row_groups << ", pages " << s.pages << ")\n";
	std::cout << "column bytes:";
	for (size_t i = 0; i < 5; ++i) {
		if (i == 4 && !has_ids) {
			continue;
		}
		std::cout << " " << column_label(i) << " " << s.column_bytes[i];
	}
	std::cout << "\n";
}

struct ConvertArgs {
	std::string input;
	std::string output;
	std::string from;
	std::string to;
	gc::WriterOptions writer;
	bool skip_invalid = false;
};

int run_convert(const ConvertArgs &args) {
	FileFormat in_fmt = resolve_format(args.input, args.from, "--from");
	FileFormat out_fmt = resolve_format(args.output, args.to, "--to");
	if (args.skip_invalid) {
		// InvalidPolicy only exists on the container write path; text
		// outputs re-emit whatever parsed.
	}

	if (out_fmt == FileFormat::Container) {
		gc::WriterOptions opts = args.writer;
		opts.on_invalid = args.skip_invalid ? gc::InvalidPolicy::Skip : gc::InvalidPolicy::Abort;
		gc::FileWriter writer(args.output, opts);
		gc::BatchSorter sorter(opts.sort, size_t(opts.batch_size),
		                       [&writer](gc::Geometry &&g) { writer.add(g); });
		auto sink = gc::flattening_sink([&sorter](gc::Geometry &&g) { sorter.add(std::move(g)); });
		read_records(args.input, in_fmt, sink);
		sorter.finish();
		gc::WriteSummary summary = writer.finish();
		print_write_summary(summary, opts.include_ids);
		return 0;
	}

	std::vector<gc::Geometry> records = load_records(args.input, in_fmt);
	if (args.writer.sort != gc::SortCurve::None) {
		records = gc::sort_stream(std::move(records), args.writer.sort,
		                          size_t(args.writer.batch_size));
	}
	if (out_fmt == FileFormat::GeoJson) {
		gc::write_geojson_file(args.output, records);
	} else {
		gc::write_wkt_file(args.output, records);
	}
	std::cout << "records " << records.size() << "\nfile bytes "
	          << std::filesystem::file_size(args.output) << "\n";
	return 0;
}

struct QueryArgs {
	std::string file;
	std::vector<double> rect;
	std::string format = "text";
};

int run_query(const QueryArgs &args) {
	gc::QueryRect q {args.rect[0], args.rect[1], args.rect[2], args.rect[3]};
	if (!q.valid()) {
		throw CLI::ValidationError("--rect", "needs xmin <= xmax and ymin <= ymax");
	}

	gc::FileReader reader(args.file);
	gc::QueryResult result = reader.range_query(q);

	if (args.format == "json") {
		std::cout << "{\"type\":\"FeatureCollection\",\"features\":[";
		for (size_t i = 0; i < result.geometries.size(); ++i) {
			if (i > 0) {
				std::cout << ",";
			}
			std::cout << "{\"type\":\"Feature\",\"id\":" << result.ids[i]
			          << ",\"properties\":{},\"geometry\":" << gc::format_geojson(result.geometries[i])
			          << "}";
		}
		std::cout << "],\"stats\":{\"row_groups_total\":" << result.stats.row_groups_total
		          << ",\"row_groups_selected\":" << result.stats.row_groups_selected
		          << ",\"pages_total\":" << result.stats.pages_total
		          << ",\"pages_selected\":" << result.stats.pages_selected
		          << ",\"bytes_read\":" << result.stats.bytes_read
		          << ",\"records_scanned\":" << result.stats.records_scanned
		          << ",\"records_matched\":" << result.stats.records_matched << "}}\n";
	} else {
		for (const gc::Geometry &g : result.geometries) {
			std::cout << gc::format_wkt(g) << "\n";
		}
	}
	std::cerr << "row groups " << result.stats.row_groups_selected << "/"
	          << result.stats.row_groups_total << ", pages " << result.stats.pages_selected << "/"
	          << result.stats.pages_total << ", bytes read " << result.stats.bytes_read
	          << ", records scanned " << result.stats.records_scanned << ", matched "
	          << result.stats.records_matched << "\n";
	return 0;
}

struct InspectArgs {
	std::string file;
	std::string format = "text";
};

int run_inspect(const InspectArgs &args) {
	gc::InspectReport report = gc::inspect_file(args.file);
	std::cout << (args.format == "json" ? gc::to_json(report) : gc::to_text(report));
	return 0;
}

struct BenchArgs {
	std::string input;
	std::string from;
	gc::SyntheticSpec spec;
	uint64_t page_size = 1ull << 20;
	uint64_t batch_size = 1'000'000;
	bool keep_order = false;
	std::string format = "text";
};

struct BenchRow {
	const char *encoding;
	const char *sort;
	const char *compression;
	uint64_t file_bytes = 0;
	uint64_t coord_bytes = 0;
	double write_ms = 0;
	double read_ms = 0;
};

int run_bench(const BenchArgs &args) {
	std::vector<gc::Geometry> records;
	if (!args.input.empty()) {
		records = load_records(args.input, resolve_format(args.input, args.from, "--from"));
	} else {
		records = gc::generate_synthetic(args.spec);
	}
	if (!args.keep_order) {
		gc::shuffle_records(records, args.spec.seed);
	}
	log_info("benchmarking " + std::to_string(records.size()) + " records");

	const std::filesystem::path tmp =
	    std::filesystem::temp_directory_path() /
	    ("geocolumn-bench-" + std::to_string(uint64_t(::getpid())) + ".spqf");

	std::vector<BenchRow> rows;
	const std::pair<const char *, gc::PageEncoding> encodings[] = {
	    {"raw", gc::PageEncoding::Raw}, {"fp-delta", gc::PageEncoding::FpDelta}};
	const std::pair<const char *, gc::SortCurve> sorts[] = {
	    {"none", gc::SortCurve::None}, {"z", gc::SortCurve::Z}, {"hilbert", gc::SortCurve::Hilbert}};
	const std::pair<const char *, gc::Compression> compressions[] = {
	    {"none", gc::Compression::None}, {"deflate", gc::Compression::Deflate}};

	using clock = std::chrono::steady_clock;
	for (const auto &[enc_name, enc] : encodings) {
		for (const auto &[sort_name, sort] : sorts) {
			for (const auto &[comp_name, comp] : compressions) {
				gc::WriterOptions opts;
				opts.page_size = args.page_size;
				opts.batch_size = args.batch_size;
				opts.encoding = enc;
				opts.sort = sort;
				opts.compression = comp;

				auto t0 = clock::now();
				gc::WriteSummary summary = gc::write_file(tmp.string(), records, opts);
				auto t1 = clock::now();
				{
					gc::FileReader reader(tmp.string());
					reader.read_all([](gc::Geometry &&, uint64_t) {});
				}
				auto t2 = clock::now();

				BenchRow row;
				row.encoding = enc_name;
				row.sort = sort_name;
				row.compression = comp_name;
				row.file_bytes = summary.file_bytes;
				row.coord_bytes = summary.column_bytes[2] + summary.column_bytes[3];
				row.write_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
				row.read_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
				rows.push_back(row);
			}
		}
	}
	std::filesystem::remove(tmp);

	if (args.format == "json") {
		std::cout << "{\"records\":" << records.size() << ",\"shuffled\":"
		          << (args.keep_order ? "false" : "true") << ",\"rows\":[";
		for (size_t i = 0; i < rows.size(); ++i) {
			const BenchRow &r = rows[i];
			if (i > 0) {
				std::cout << ",";
			}
			std::cout << "{\"encoding\":\"" << r.encoding << "\",\"sort\":\"" << r.sort
			          << "\",\"compression\":\"" << r.compression << "\",\"file_bytes\":" << r.file_bytes
			          << ",\"coord_bytes\":" << r.coord_bytes << ",\"write_ms\":" << r.write_ms
			          << ",\"read_ms\":" << r.read_ms << "}";
		}
		std::cout << "]}\n";
		return 0;
	}

	std::printf("records: %zu%s (times are informational, sizes deterministic)\n", records.size(),
	            args.keep_order ? "" : ", shuffled");
	std::printf("%-9s %-8s %-8s %12s %12s %10s %9s\n", "encoding", "sort", "compress", "file bytes",
	            "coord bytes", "write ms", "read ms");
	for (const BenchRow &r : rows) {
		std::printf("%-9s %-8s %-8s %12llu %12llu %10.1f %9.1f\n", r.encoding, r.sort, r.compression,
		            static_cast<unsigned long long>(r.file_bytes),
		            static_cast<unsigned long long>(r.coord_bytes), r.write_ms, r.read_ms);
	}
	std::printf("fp-delta write overhead vs raw (informational):");
	for (size_t i = 0; i < rows.size() / 2; ++i) {
		const BenchRow &raw = rows[i];
		const BenchRow &fp = rows[i + rows.size() / 2];
		std::printf(" %s/%s %+.0f%%", raw.sort, raw.compression,
		            raw.write_ms > 0 ? (fp.write_ms / raw.write_ms - 1.0) * 100.0 : 0.0);
	}
	std::printf("\n");
	return 0;
}

} // namespace

int main(int argc, char **argv) {
	CLI::App app {"columnar geometry container with delta-compressed coordinates"};
	app.require_subcommand(1);
	app.set_version_flag("--version", "geocolumn 1.0.0");

	const std::map<std::string, gc::SortCurve> sort_names {
	    {"none", gc::SortCurve::None}, {"z", gc::SortCurve::Z}, {"hilbert", gc::SortCurve::Hilbert}};
	const std::map<std::string, gc::Compression> compression_names {
	    {"none", gc::Compression::None}, {"deflate", gc::Compression::Deflate}};
	const std::map<std::string, gc::PageEncoding> encoding_names {
	    {"raw", gc::PageEncoding::Raw}, {"fp-delta", gc::PageEncoding::FpDelta}};
	const auto format_check = CLI::IsMember({"text", "json"});
	const auto from_check = CLI::IsMember({"geojson", "wkt", "spqf"});

	ConvertArgs convert_args;
	CLI::App *convert = app.add_subcommand("convert", "convert between geojson, wkt, and container");
	convert->add_option("input", convert_args.input, "input path")->required();
	convert->add_option("output", convert_args.output, "output path")->required();
	convert->add_option("--from", convert_args.from, "input format when the extension is unclear")
	    ->check(from_check);
	convert->add_option("--to", convert_args.to, "output format when the extension is unclear")
	    ->check(from_check);
	convert->add_option("--sort", convert_args.writer.sort, "space-filling-curve record order")
	    ->transform(CLI::CheckedTransformer(sort_names));
	convert
	    ->add_option("--compression", convert_args.writer.compression, "page compression codec")
	    ->transform(CLI::CheckedTransformer(compression_names));
	convert->add_option("--encoding", convert_args.writer.encoding, "coordinate page encoding")
	    ->transform(CLI::CheckedTransformer(encoding_names));
	convert->add_option("--page-size", convert_args.writer.page_size,
	                    "uncompressed page payload bytes");
	convert->add_option("--batch-size", convert_args.writer.batch_size,
	                    "records per sort batch and row group");
	convert->add_flag("--ids", convert_args.writer.include_ids, "store a record ordinal column");
	convert->add_flag("--skip-invalid", convert_args.skip_invalid,
	                  "drop malformed geometries instead of aborting");

	QueryArgs query_args;
	CLI::App *query = app.add_subcommand("query", "run a rectangle range query on a container file");
	query->add_option("file", query_args.file, "container file")->required();
	query->add_option("--rect", query_args.rect, "xmin,ymin,xmax,ymax")
	    ->required()
	    ->delimiter(',')
	    ->expected(4);
	query->add_option("--format", query_args.format, "result format (text = wkt lines)")
	    ->check(format_check);

	InspectArgs inspect_args;
	CLI::App *inspect = app.add_subcommand("inspect", "report sizes, stats, and delta-bit histograms");
	inspect->add_option("file", inspect_args.file, "container file")->required();
	inspect->add_option("--format", inspect_args.format, "report format")->check(format_check);

	BenchArgs bench_args;
	CLI::App *bench = app.add_subcommand(
	    "bench", "size/time matrix across {raw,fp-delta} x {none,z,hilbert} x {none,deflate}");
	bench->add_option("--input", bench_args.input, "benchmark an existing dataset");
	bench->add_option("--from", bench_args.from, "input format when the extension is unclear")
	    ->check(from_check);
	bench->add_option("--count", bench_args.spec.count, "synthetic record count")
	    ->default_val(uint64_t(100'000));
	bench->add_option("--clusters", bench_args.spec.clusters, "synthetic cluster count");
	bench->add_option("--stddev", bench_args.spec.stddev, "synthetic cluster spread");
	bench->add_option("--polygons", bench_args.spec.polygon_fraction,
	                  "fraction of synthetic records emitted as polygons");
	bench->add_option("--seed", bench_args.spec.seed, "synthetic generator and shuffle seed");
	bench->add_option("--page-size", bench_args.page_size, "uncompressed page payload bytes");
	bench->add_option("--batch-size", bench_args.batch_size, "records per sort batch and row group");
	bench->add_flag("--keep-order", bench_args.keep_order,
	                "benchmark records as given instead of shuffling first");
	bench->add_option("--format", bench_args.format, "table format")->check(format_check);

	CLI11_PARSE(app, argc, argv);

	try {
		if (convert->parsed()) {
			return run_convert(convert_args);
		}
		if (query->parsed()) {
			return run_query(query_args);
		}
		if (inspect->parsed()) {
			return run_inspect(inspect_args);
		}
		return run_bench(bench_args);
	} catch (const CLI::Error &e) {
		return app.exit(e);
	} catch (const std::exception &e) {
		std::cerr << "geocolumn: " << e.what() << "\n";
		return 1;
	}
}
