#pragma once

// Shared helpers for the test binaries: deterministic geometry and double
// array generators plus a scratch-directory guard. Everything is seeded
// explicitly so failures reproduce.

#include <geocolumn/geocolumn.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

namespace testsupport {

namespace gc = geocolumn;

inline double u01(std::mt19937_64 &rng) {
	return double((rng() >> 11) + 1) * 0x1p-53;
}

// Uniform in [lo, hi).
inline double uniform(std::mt19937_64 &rng, double lo, double hi) {
	return lo + u01(rng) * (hi - lo);
}

// The awkward values a lossless codec has to carry: NaNs with payloads,
// signed zeros, infinities, denormals, and the extremes of the range.
inline double adversarial_double(std::mt19937_64 &rng) {
	switch (rng() % 10) {
	case 0: return std::numeric_limits<double>::quiet_NaN();
	case 1: return gc::bits_to_float(0x7FF8000000000001ULL); // NaN payload
	case 2: return 0.0;
	case 3: return -0.0;
	case 4: return std::numeric_limits<double>::infinity();
	case 5: return -std::numeric_limits<double>::infinity();
	case 6: return std::numeric_limits<double>::denorm_min();
	case 7: return -4.9406564584124654e-324;
	case 8: return std::numeric_limits<double>::max();
	default: return -std::numeric_limits<double>::max();
	}
}

inline gc::Coordinate random_point(std::mt19937_64 &rng) {
	return {uniform(rng, -180, 180), uniform(rng, -90, 90)};
}

// Convex-ish ring that is never degenerate: a regular k-gon with bounded
// radial jitter, closed, in counter-clockwise vertex order.
inline gc::Ring random_ring(std::mt19937_64 &rng, gc::Coordinate center, double radius) {
	size_t k = 3 + rng() % 8;
	gc::Ring ring;
	ring.reserve(k + 1);
	double phase = uniform(rng, 0, 2 * 3.141592653589793);
	for (size_t i = 0; i < k; ++i) {
		double a = phase + 2 * 3.141592653589793 * double(i) / double(k);
		double r = radius * (0.7 + 0.3 * u01(rng));
		ring.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a)});
	}
	ring.push_back(ring.front());
	return ring;
}

inline gc::Polygon random_polygon(std::mt19937_64 &rng) {
	gc::Polygon poly;
	gc::Coordinate c = random_point(rng);
	poly.rings.push_back(random_ring(rng, c, uniform(rng, 0.5, 3)));
	size_t holes = rng() % 3;
	for (size_t i = 0; i < holes; ++i) {
		poly.rings.push_back(random_ring(rng, c, uniform(rng, 0.05, 0.2)));
	}
	return poly;
}

struct GeometryMix {
	// When set, point-bearing types may draw adversarial coordinates.
	// Polygon types stay finite so their ring orientation is well defined.
	bool adversarial = false;
	bool include_empty = true;
};

inline gc::Geometry random_geometry(std::mt19937_64 &rng, const GeometryMix &mix = {}) {
	auto coord = [&rng, &mix]() -> gc::Coordinate {
		if (mix.adversarial && rng() % 8 == 0) {
			return {adversarial_double(rng), adversarial_double(rng)};
		}
		return random_point(rng);
	};
	switch (rng() % (mix.include_empty ? 7 : 6)) {
	case 0: return gc::Point {coord()};
	case 1: {
		gc::LineString ls;
		size_t n = 2 + rng() % 10;
		for (size_t i = 0; i < n; ++i) {
			ls.points.push_back(coord());
		}
		return ls;
	}
	case 2: return random_polygon(rng);
	case 3: {
		gc::MultiPoint mp;
		size_t n = 1 + rng() % 5;
		for (size_t i = 0; i < n; ++i) {
			mp.points.push_back(coord());
		}
		return mp;
	}
	case 4: {
		gc::MultiLineString mls;
		size_t parts = 1 + rng() % 4;
		for (size_t p = 0; p < parts; ++p) {
			gc::LineString ls;
			size_t n = 2 + rng() % 6;
			for (size_t i = 0; i < n; ++i) {
				ls.points.push_back(coord());
			}
			mls.lines.push_back(std::move(ls));
		}
		return mls;
	}
	case 5: {
		gc::MultiPolygon mp;
		size_t parts = 1 + rng() % 3;
		for (size_t p = 0; p < parts; ++p) {
			mp.polygons.push_back(random_polygon(rng));
		}
		return mp;
	}
	default: return gc::EmptyGeometry {};
	}
}

inline std::vector<gc::Geometry> random_corpus(uint64_t seed, size_t count,
                                               const GeometryMix &mix = {}) {
	std::mt19937_64 rng(seed);
	std::vector<gc::Geometry> out;
	out.reserve(count);
	for (size_t i = 0; i < count; ++i) {
		out.push_back(random_geometry(rng, mix));
	}
	return out;
}

// Double arrays with qualitatively different delta behavior, for codec
// oracles: constants, smooth walks, quantized walks, raw bit noise,
// clustered values with outliers, denormal walks.
inline std::vector<double> random_array(std::mt19937_64 &rng, size_t len) {
	std::vector<double> v(len);
	switch (rng() % 6) {
	case 0: {
		double c = uniform(rng, -1000, 1000);
		for (double &x : v) {
			x = c;
		}
		break;
	}
	case 1: {
		double x = uniform(rng, -100, 100);
		for (double &e : v) {
			e = x;
			x += uniform(rng, -0.001, 0.001);
		}
		break;
	}
	case 2: {
		double step = std::pow(10.0, double(int(rng() % 7)) - 4);
		double x = uniform(rng, -1000, 1000);
		for (double &e : v) {
			x += uniform(rng, -20, 20);
			e = std::round(x / step) * step;
		}
		break;
	}
	case 3:
		for (double &e : v) {
			e = gc::bits_to_float(rng());
		}
		break;
	case 4: {
		double base = uniform(rng, -1e6, 1e6);
		for (double &e : v) {
			e = rng() % 50 == 0 ? adversarial_double(rng) : base + uniform(rng, 0, 1e-6);
		}
		break;
	}
	default: {
		uint64_t bits = rng() % 4096;
		for (double &e : v) {
			bits += rng() % 17;
			e = gc::bits_to_float(bits);
		}
		break;
	}
	}
	return v;
}

// Scratch directory removed on destruction.
class TempDir {
public:
	explicit TempDir(const std::string &tag = "geocolumn-test") {
		auto base = std::filesystem::temp_directory_path();
		for (int i = 0; i < 1000; ++i) {
			path_ = base / (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(i));
			std::error_code ec;
			if (std::filesystem::create_directory(path_, ec)) {
				return;
			}
		}
		throw std::runtime_error("cannot create scratch directory under " + base.string());
	}
	~TempDir() {
		std::error_code ec;
		std::filesystem::remove_all(path_, ec);
	}
	TempDir(const TempDir &) = delete;
	TempDir &operator=(const TempDir &) = delete;

	std::string file(const std::string &name) const {
		return (path_ / name).string();
	}

private:
	std::filesystem::path path_;
};

} // namespace testsupport
