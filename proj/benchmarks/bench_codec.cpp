#include <geocolumn/fp_delta.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

using namespace geocolumn;

namespace {

// Quantized random walk: the shape clustered, grid-snapped coordinates
// take, where the codec earns its keep.
std::vector<double> walk_values(size_t n, uint64_t seed) {
	std::mt19937_64 rng(seed);
	std::vector<double> v(n);
	double x = 0;
	for (size_t i = 0; i < n; ++i) {
		x += double(int64_t(rng() % 2001) - 1000) / 1000.0;
		if (rng() % 256 == 0) {
			x += double(rng() % 1000);
		}
		v[i] = std::round(x * 1024) / 1024;
	}
	return v;
}

// Arbitrary bit patterns: the worst case, where every page falls back raw.
std::vector<double> noise_values(size_t n, uint64_t seed) {
	std::mt19937_64 rng(seed);
	std::vector<double> v(n);
	for (double &x : v) {
		x = bits_to_float(rng());
	}
	return v;
}

void set_throughput(benchmark::State &state, size_t values) {
	state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(values));
	state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(values) * 8);
}

void BM_EncodeWalk(benchmark::State &state) {
	auto values = walk_values(size_t(state.range(0)), 1);
	for (auto _ : state) {
		EncodedPage page = encode_coordinate_page(values);
		benchmark::DoNotOptimize(page.bytes.data());
	}
	set_throughput(state, values.size());
}
BENCHMARK(BM_EncodeWalk)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

void BM_EncodeNoise(benchmark::State &state) {
	auto values = noise_values(size_t(state.range(0)), 2);
	for (auto _ : state) {
		EncodedPage page = encode_coordinate_page(values);
		benchmark::DoNotOptimize(page.bytes.data());
	}
	set_throughput(state, values.size());
}
BENCHMARK(BM_EncodeNoise)->Arg(1 << 14);

void BM_DecodeWalk(benchmark::State &state) {
	auto values = walk_values(size_t(state.range(0)), 3);
	EncodedPage page = encode_coordinate_page(values);
	for (auto _ : state) {
		auto out = decode_coordinate_page(page.bytes, values.size());
		benchmark::DoNotOptimize(out.data());
	}
	set_throughput(state, values.size());
}
BENCHMARK(BM_DecodeWalk)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

void BM_ScanDeltas(benchmark::State &state) {
	auto values = walk_values(size_t(state.range(0)), 4);
	for (auto _ : state) {
		DeltaScan scan = scan_deltas(values);
		benchmark::DoNotOptimize(scan.value_count);
	}
	set_throughput(state, values.size());
}
BENCHMARK(BM_ScanDeltas)->Arg(1 << 14);

} // namespace
