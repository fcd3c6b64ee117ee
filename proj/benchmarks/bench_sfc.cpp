#include <geocolumn/sfc.hpp>
#include <geocolumn/synthetic.hpp>

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace geocolumn;

namespace {

struct Cell {
	uint32_t x;
	uint32_t y;
};

std::vector<Cell> random_cells(size_t n, uint64_t seed) {
	std::mt19937_64 rng(seed);
	std::vector<Cell> cells(n);
	for (Cell &c : cells) {
		c.x = uint32_t(rng()) % kGridCells;
		c.y = uint32_t(rng()) % kGridCells;
	}
	return cells;
}

void BM_ZKey(benchmark::State &state) {
	auto cells = random_cells(size_t(state.range(0)), 10);
	for (auto _ : state) {
		uint64_t acc = 0;
		for (const Cell &c : cells) {
			acc ^= z_key(c.x, c.y);
		}
		benchmark::DoNotOptimize(acc);
	}
	state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(cells.size()));
}
BENCHMARK(BM_ZKey)->Arg(1 << 16);

void BM_HilbertKey(benchmark::State &state) {
	auto cells = random_cells(size_t(state.range(0)), 11);
	for (auto _ : state) {
		uint64_t acc = 0;
		for (const Cell &c : cells) {
			acc ^= hilbert_key(c.x, c.y);
		}
		benchmark::DoNotOptimize(acc);
	}
	state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(cells.size()));
}
BENCHMARK(BM_HilbertKey)->Arg(1 << 16);

const std::vector<Geometry> &sort_input() {
	static const std::vector<Geometry> records = [] {
		SyntheticSpec spec;
		spec.count = 100'000;
		spec.seed = 12;
		auto v = generate_synthetic(spec);
		shuffle_records(v, 12);
		return v;
	}();
	return records;
}

void BM_SortBatch(benchmark::State &state) {
	SortCurve curve = SortCurve(state.range(0));
	const size_t batch = sort_input().size();
	for (auto _ : state) {
		state.PauseTiming();
		std::vector<Geometry> records = sort_input();
		state.ResumeTiming();
		auto sorted = sort_stream(std::move(records), curve, batch);
		benchmark::DoNotOptimize(sorted.data());
	}
	state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(sort_input().size()));
}
BENCHMARK(BM_SortBatch)
    ->Arg(int(SortCurve::Z))
    ->Arg(int(SortCurve::Hilbert))
    ->ArgName("curve");

} // namespace
