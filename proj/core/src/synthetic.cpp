#include "geocolumn/synthetic.hpp"

#include "geocolumn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

namespace geocolumn {

namespace {

// Uniform in (0, 1]: 53 mantissa bits, never zero so log() stays finite.
// Hand-rolled instead of std::uniform_real_distribution because the
// engine's output sequence is pinned by the standard and the distribution's
// is not; datasets must not shift across library versions.
double u01(std::mt19937_64 &rng) {
	return double((rng() >> 11) + 1) * 0x1.0p-53;
}

// Box-Muller transform, both outputs of one draw pair.
std::pair<double, double> normal_pair(std::mt19937_64 &rng) {
	double u1 = u01(rng);
	double u2 = u01(rng);
	double r = std::sqrt(-2.0 * std::log(u1));
	double a = 2.0 * std::numbers::pi * u2;
	return {r * std::cos(a), r * std::sin(a)};
}

double snap(double v, double step) {
	return step > 0 ? std::round(v / step) * step : v;
}

} // namespace

void generate_synthetic(const SyntheticSpec &spec, const GeometrySink &sink) {
	if (spec.count == 0) {
		return;
	}
	if (spec.clusters == 0) {
		throw Error("synthetic data needs at least one cluster");
	}
	if (!spec.domain.valid()) {
		throw Error("synthetic domain is inverted or empty");
	}

	std::mt19937_64 rng(spec.seed);
	std::vector<Coordinate> centers(spec.clusters);
	for (Coordinate &c : centers) {
		c.x = spec.domain.min_x + u01(rng) * spec.domain.width();
		c.y = spec.domain.min_y + u01(rng) * spec.domain.height();
	}

	const double step = spec.grid_step < 0 ? spec.stddev / 8 : spec.grid_step;
	for (uint64_t i = 0; i < spec.count; ++i) {
		const Coordinate &center = centers[size_t(i * spec.clusters / spec.count)];
		auto [dx, dy] = normal_pair(rng);
		Coordinate p {center.x + dx * spec.stddev, center.y + dy * spec.stddev};
		p.x = std::clamp(snap(p.x, step), spec.domain.min_x, spec.domain.max_x);
		p.y = std::clamp(snap(p.y, step), spec.domain.min_y, spec.domain.max_y);

		if (spec.polygon_fraction > 0 && u01(rng) <= spec.polygon_fraction) {
			// Regular k-gon around p; vertices stay unsnapped so tiny radii
			// cannot collapse the ring.
			uint32_t k = 4 + uint32_t(rng() % 9);
			double phase = 2.0 * std::numbers::pi * u01(rng);
			Ring ring;
			ring.reserve(k + 1);
			for (uint32_t v = 0; v < k; ++v) {
				double angle = phase + 2.0 * std::numbers::pi * double(v) / double(k);
				ring.push_back({p.x + spec.polygon_radius * std::cos(angle),
				                p.y + spec.polygon_radius * std::sin(angle)});
			}
			ring.push_back(ring.front());
			sink(Geometry(Polygon {{std::move(ring)}}));
		} else {
			sink(Geometry(Point {p}));
		}
	}
}

std::vector<Geometry> generate_synthetic(const SyntheticSpec &spec) {
	std::vector<Geometry> out;
	out.reserve(spec.count);
	generate_synthetic(spec, [&out](Geometry &&g) { out.push_back(std::move(g)); });
	return out;
}

void shuffle_records(std::vector<Geometry> &records, uint64_t seed) {
	std::mt19937_64 rng(seed);
	for (size_t i = records.size(); i > 1; --i) {
		size_t j = size_t(rng() % i);
		std::swap(records[i - 1], records[j]);
	}
}

} // namespace geocolumn
