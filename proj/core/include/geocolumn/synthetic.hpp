#pragma once

#include "geocolumn/geometry.hpp"

#include <cstdint>
#include <vector>

namespace geocolumn {

// Gaussian point clusters over a rectangular domain. Records come out
// cluster by cluster in contiguous runs; shuffle_records builds an
// order-free twin when one is needed.
struct SyntheticSpec {
	uint64_t count = 0;
	uint32_t clusters = 100;
	double stddev = 3.6; // one percent of the default domain width
	Envelope domain {-180, -90, 180, 90};
	uint64_t seed = 1;
	// Coordinates snap to this grid pitch, mimicking the fixed measurement
	// precision of real trackers. Negative derives stddev/8; 0 disables.
	double grid_step = -1;
	// Fraction of records emitted as regular k-gons (k in [4,12]) of the
	// given radius around a sampled center, instead of bare points.
	double polygon_fraction = 0;
	double polygon_radius = 0.01;
};

// Deterministic under (all fields of) spec; same spec twice gives
// bit-identical geometry. Throws when clusters == 0 with count > 0 or the
// domain is inverted.
void generate_synthetic(const SyntheticSpec &spec, const GeometrySink &sink);
std::vector<Geometry> generate_synthetic(const SyntheticSpec &spec);

// Seeded Fisher-Yates permutation, in place.
void shuffle_records(std::vector<Geometry> &records, uint64_t seed);

} // namespace geocolumn
