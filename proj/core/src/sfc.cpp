#include "geocolumn/sfc.hpp"

#include "geocolumn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace geocolumn {

namespace {

// Spreads the 32 bits of v across the even bit positions of a 64-bit word.
uint64_t spread_bits(uint32_t v) {
	uint64_t x = v;
	x = (x | (x << 16)) & 0x0000FFFF0000FFFFULL;
	x = (x | (x << 8)) & 0x00FF00FF00FF00FFULL;
	x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0FULL;
	x = (x | (x << 2)) & 0x3333333333333333ULL;
	x = (x | (x << 1)) & 0x5555555555555555ULL;
	return x;
}

void hilbert_rotate(uint32_t n, uint32_t &x, uint32_t &y, bool rx, bool ry) {
	if (ry) {
		return;
	}
	if (rx) {
		x = n - 1 - x;
		y = n - 1 - y;
	}
	std::swap(x, y);
}

} // namespace

uint64_t z_key(uint32_t cx, uint32_t cy) {
	return spread_bits(cx) | (spread_bits(cy) << 1);
}

uint64_t hilbert_key(uint32_t cx, uint32_t cy, uint32_t cells) {
	uint32_t x = std::min(cx, cells - 1);
	uint32_t y = std::min(cy, cells - 1);
	uint64_t index = 0;
	for (uint32_t s = cells >> 1; s > 0; s >>= 1) {
		bool rx = (x & s) != 0;
		bool ry = (y & s) != 0;
		index += ((3ULL * uint64_t(rx)) ^ uint64_t(ry)) * s * s;
		hilbert_rotate(cells, x, y, rx, ry);
	}
	return index;
}

uint32_t grid_cell(double v, double lo, double hi) {
	if (!(hi > lo)) {
		return 0;
	}
	double scaled = (v - lo) / (hi - lo) * double(kGridCells);
	if (!(scaled > 0)) {
		return 0; // also catches NaN
	}
	if (scaled >= double(kGridCells)) {
		return kGridCells - 1;
	}
	return uint32_t(scaled);
}

Coordinate representative_point(const Geometry &g) {
	Envelope env = envelope(g);
	if (!env.valid()) {
		throw InvalidGeometryError("geometry has no finite coordinates to locate");
	}
	return env.center();
}

BatchSorter::BatchSorter(SortCurve curve, size_t batch_size, Sink sink)
    : curve_(curve), batch_size_(std::max<size_t>(batch_size, 1)), sink_(std::move(sink)) {
}

void BatchSorter::add(Geometry g) {
	if (curve_ == SortCurve::None) {
		sink_(std::move(g));
		return;
	}
	Envelope env = envelope(g);
	Coordinate rep = env.valid() ? env.center() : Coordinate {std::nan(""), std::nan("")};
	bbox_.expand(rep);
	reps_.push_back(rep);
	buffer_.push_back(std::move(g));
	if (buffer_.size() >= batch_size_) {
		flush();
	}
}

void BatchSorter::finish() {
	if (!buffer_.empty()) {
		flush();
	}
}

void BatchSorter::flush() {
	std::vector<std::pair<uint64_t, size_t>> keyed(buffer_.size());
	for (size_t i = 0; i < buffer_.size(); ++i) {
		uint32_t cx = grid_cell(reps_[i].x, bbox_.min_x, bbox_.max_x);
		uint32_t cy = grid_cell(reps_[i].y, bbox_.min_y, bbox_.max_y);
		keyed[i] = {curve_ == SortCurve::Z ? z_key(cx, cy) : hilbert_key(cx, cy), i};
	}
	// Stable on the key so equal keys keep input order; the index second
	// member never gets compared.
	std::stable_sort(keyed.begin(), keyed.end(),
	                 [](const auto &a, const auto &b) { return a.first < b.first; });
	for (const auto &[key, i] : keyed) {
		(void)key;
		sink_(std::move(buffer_[i]));
	}
	buffer_.clear();
	reps_.clear();
	bbox_ = Envelope {};
}

std::vector<Geometry> sort_stream(std::vector<Geometry> records, SortCurve curve, size_t batch_size) {
	std::vector<Geometry> out;
	out.reserve(records.size());
	BatchSorter sorter(curve, batch_size, [&out](Geometry &&g) { out.push_back(std::move(g)); });
	for (Geometry &g : records) {
		sorter.add(std::move(g));
	}
	sorter.finish();
	return out;
}

} // namespace geocolumn
