#pragma once

#include "geocolumn/bitstream.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace geocolumn {

// Lossless codec for sequences of 64-bit floats. Consecutive values are
// differenced on their two's-complement bit reinterpretation, zigzag-folded,
// and bit-packed at a fixed width n chosen to minimize the output size.
// Deltas that do not fit in n bits are escaped: the all-ones n-bit reset
// marker followed by the full 64-bit value. A zigzag that happens to equal
// the marker pattern is escaped the same way.
//
// Stream layout (bit-exact, LSB-first within bytes):
//   [8-bit n][64-bit first value][body: n-bit tokens, 64-bit escapes]
//
// The page-level wrapper prepends a one-byte encoding flag and falls back to
// 64 raw bits per value when the delta form would not be smaller.

inline uint64_t float_bits(double v) {
	return std::bit_cast<uint64_t>(v);
}
inline double bits_to_float(uint64_t b) {
	return std::bit_cast<double>(b);
}

inline uint64_t zigzag_encode(int64_t delta) {
	return uint64_t(delta >> 63) ^ (uint64_t(delta) << 1);
}

inline int64_t zigzag_decode(uint64_t z) {
	return int64_t(z >> 1) ^ -int64_t(z & 1);
}

// 64 minus the number of leading zero bits; significant_bits(0) == 0.
inline unsigned significant_bits(uint64_t z) {
	return 64u - unsigned(std::countl_zero(z));
}

inline uint64_t reset_marker(unsigned n) {
	return n >= 64 ? ~uint64_t(0) : (uint64_t(1) << n) - 1;
}

// Counts of zigzag deltas by exact significant-bit width (bins 0..64).
// suffix_sum() converts bin n into "number of deltas needing at least
// n bits", after which the bins are non-increasing.
struct DeltaHistogram {
	std::array<uint64_t, 65> bins {};

	void suffix_sum() {
		for (int n = 63; n >= 0; --n) {
			bins[n] += bins[n + 1];
		}
	}

	uint64_t &operator[](size_t i) {
		return bins[i];
	}
	uint64_t operator[](size_t i) const {
		return bins[i];
	}
};

// One pass over the deltas of a value sequence: the exact-width histogram
// plus, per width, how many zigzags equal that width's all-ones marker
// pattern (those cost an escape even though they fit).
struct DeltaScan {
	DeltaHistogram exact_bits;
	std::array<uint64_t, 65> marker_hits {};
	uint64_t value_count = 0;
};

DeltaScan scan_deltas(std::span<const double> values);

// Body size in bits for width n per the histogram estimate: each delta
// costs n bits and each delta needing more than n bits costs 64 extra.
// `suffix_hist` must already be suffix-summed. Marker collisions are not
// modeled here; see encoded_body_bits for the exact figure.
uint64_t estimated_size_bits(unsigned n, const DeltaHistogram &suffix_hist, uint64_t count);

// Exact body size in bits for width n: the estimate plus 64 bits for every
// marker collision.
uint64_t encoded_body_bits(unsigned n, const DeltaScan &scan);

// Width in [1, 64] minimizing the exact encoded body size; ties break toward
// the smaller width. Requires at least 2 values.
unsigned compute_best_delta_bits(std::span<const double> values);
unsigned compute_best_delta_bits(const DeltaScan &scan);

// True when the delta form (flag-relative: width byte + first value + body)
// would not be strictly smaller than 64 raw bits per value.
bool should_fallback_raw(std::span<const double> values, unsigned n);

void fp_delta_encode(std::span<const double> values, BitWriter &out);
// Encoder pinned to a caller-chosen width (used by size oracles and tests).
void fp_delta_encode_width(std::span<const double> values, unsigned n, BitWriter &out);

std::vector<double> fp_delta_decode(BitReader &in, size_t count);

// Page-level wrapper: one flag byte, then either the delta stream or raw
// 64-bit values, zero-padded to a byte boundary.
enum class PageEncoding : uint8_t {
	Raw = 0,
	FpDelta = 1,
};

struct EncodedPage {
	std::vector<uint8_t> bytes;
	PageEncoding encoding = PageEncoding::Raw;
};

// `request` Raw pins the page raw; FpDelta picks whichever form is smaller.
EncodedPage encode_coordinate_page(std::span<const double> values,
                                   PageEncoding request = PageEncoding::FpDelta);
std::vector<double> decode_coordinate_page(std::span<const uint8_t> payload, size_t count);

} // namespace geocolumn
