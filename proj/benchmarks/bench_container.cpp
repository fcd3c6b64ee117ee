#include <geocolumn/reader.hpp>
#include <geocolumn/synthetic.hpp>
#include <geocolumn/writer.hpp>

#include <benchmark/benchmark.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

using namespace geocolumn;

namespace {

constexpr uint64_t kRecords = 200'000;

const std::vector<Geometry> &corpus() {
	static const std::vector<Geometry> records = [] {
		SyntheticSpec spec;
		spec.count = kRecords;
		spec.seed = 21;
		auto v = generate_synthetic(spec);
		shuffle_records(v, 21);
		return v;
	}();
	return records;
}

std::string temp_path(const char *name) {
	auto dir = std::filesystem::temp_directory_path() / "geocolumn-bench";
	std::filesystem::create_directories(dir);
	return (dir / name).string();
}

WriterOptions layout(SortCurve sort) {
	WriterOptions opt;
	opt.page_size = 64 * 1024;
	opt.sort = sort;
	return opt;
}

void BM_Write(benchmark::State &state) {
	SortCurve sort = SortCurve(state.range(0));
	std::string path = temp_path("write.spqf");
	uint64_t bytes = 0;
	for (auto _ : state) {
		state.PauseTiming();
		std::vector<Geometry> records = corpus();
		state.ResumeTiming();
		WriteSummary summary = write_file(path, std::move(records), layout(sort));
		bytes = summary.file_bytes;
		benchmark::DoNotOptimize(summary.records);
	}
	state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(kRecords));
	state.counters["file_bytes"] = double(bytes);
	std::remove(path.c_str());
}
BENCHMARK(BM_Write)
    ->Arg(int(SortCurve::None))
    ->Arg(int(SortCurve::Hilbert))
    ->ArgName("curve")
    ->Unit(benchmark::kMillisecond);

// One sorted file shared by the read benchmarks; written on first use.
const std::string &read_file() {
	static const std::string path = [] {
		std::string p = temp_path("read.spqf");
		write_file(p, corpus(), layout(SortCurve::Hilbert));
		return p;
	}();
	return path;
}

void BM_ReadAll(benchmark::State &state) {
	const std::string &path = read_file();
	for (auto _ : state) {
		FileReader reader(path);
		uint64_t n = 0;
		reader.read_all([&](Geometry &&, uint64_t) { ++n; });
		benchmark::DoNotOptimize(n);
	}
	state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(kRecords));
	state.SetBytesProcessed(int64_t(state.iterations()) *
	                        int64_t(std::filesystem::file_size(read_file())));
	state.counters["records"] = double(kRecords);
}
BENCHMARK(BM_ReadAll)->Unit(benchmark::kMillisecond);

void BM_RangeQuery(benchmark::State &state) {
	FileReader reader(read_file());
	// A window about two cluster widths on a side somewhere mid-domain.
	QueryRect q {20, 10, 27.2, 17.2};
	uint64_t matched = 0;
	for (auto _ : state) {
		QueryResult res = reader.range_query(q);
		matched = res.stats.records_matched;
		benchmark::DoNotOptimize(res.geometries.data());
	}
	state.counters["matched"] = double(matched);
}
BENCHMARK(BM_RangeQuery)->Unit(benchmark::kMicrosecond);

} // namespace
