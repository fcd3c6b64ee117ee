#include "geocolumn/fp_delta.hpp"

#include "geocolumn/error.hpp"

#include <cassert>
#include <limits>

namespace geocolumn {

DeltaScan scan_deltas(std::span<const double> values) {
	DeltaScan scan;
	scan.value_count = values.size();
	for (size_t i = 1; i < values.size(); ++i) {
		int64_t delta = int64_t(float_bits(values[i]) - float_bits(values[i - 1]));
		uint64_t z = zigzag_encode(delta);
		unsigned n = significant_bits(z);
		scan.exact_bits[n]++;
		// z fits exactly in n bits; it collides with the marker only at
		// width n, where the all-ones pattern equals z.
		if (n >= 1 && z == reset_marker(n)) {
			scan.marker_hits[n]++;
		}
	}
	return scan;
}

uint64_t estimated_size_bits(unsigned n, const DeltaHistogram &suffix_hist, uint64_t count) {
	assert(n >= 1 && n <= 64);
	uint64_t overflow = n < 64 ? suffix_hist[n + 1] : 0;
	return uint64_t(n) * (count - 1) + 64 * overflow;
}

uint64_t encoded_body_bits(unsigned n, const DeltaScan &scan) {
	DeltaHistogram suffix = scan.exact_bits;
	suffix.suffix_sum();
	return estimated_size_bits(n, suffix, scan.value_count) + 64 * scan.marker_hits[n];
}

unsigned compute_best_delta_bits(const DeltaScan &scan) {
	DeltaHistogram suffix = scan.exact_bits;
	suffix.suffix_sum();
	unsigned best_n = 1;
	uint64_t best_size = std::numeric_limits<uint64_t>::max();
	for (unsigned n = 1; n <= 64; ++n) {
		uint64_t size = estimated_size_bits(n, suffix, scan.value_count) + 64 * scan.marker_hits[n];
		if (size < best_size) {
			best_size = size;
			best_n = n;
		}
	}
	return best_n;
}

unsigned compute_best_delta_bits(std::span<const double> values) {
	assert(values.size() >= 2);
	return compute_best_delta_bits(scan_deltas(values));
}

bool should_fallback_raw(std::span<const double> values, unsigned n) {
	if (values.size() <= 1) {
		return true;
	}
	uint64_t delta_bits = 8 + 64 + encoded_body_bits(n, scan_deltas(values));
	uint64_t raw_bits = 64 * uint64_t(values.size());
	return delta_bits >= raw_bits;
}

void fp_delta_encode_width(std::span<const double> values, unsigned n, BitWriter &out) {
	assert(n >= 1 && n <= 64);
	assert(!values.empty());
	const uint64_t marker = reset_marker(n);
	out.write(n, 8);
	out.write(float_bits(values[0]), 64);
	for (size_t i = 1; i < values.size(); ++i) {
		int64_t delta = int64_t(float_bits(values[i]) - float_bits(values[i - 1]));
		uint64_t z = zigzag_encode(delta);
		if (significant_bits(z) > n || z == marker) {
			out.write(marker, n);
			out.write(float_bits(values[i]), 64);
		} else {
			out.write(z, n);
		}
	}
}

void fp_delta_encode(std::span<const double> values, BitWriter &out) {
	fp_delta_encode_width(values, compute_best_delta_bits(values), out);
}

std::vector<double> fp_delta_decode(BitReader &in, size_t count) {
	std::vector<double> values;
	if (count == 0) {
		return values;
	}
	values.reserve(count);
	unsigned n = unsigned(in.read(8));
	if (n < 1 || n > 64) {
		throw FormatError("invalid delta width " + std::to_string(n));
	}
	const uint64_t marker = reset_marker(n);
	uint64_t prev = in.read(64);
	values.push_back(bits_to_float(prev));
	for (size_t i = 1; i < count; ++i) {
		uint64_t z = in.read(n);
		if (z == marker) {
			prev = in.read(64);
		} else {
			prev += uint64_t(zigzag_decode(z));
		}
		values.push_back(bits_to_float(prev));
	}
	return values;
}

EncodedPage encode_coordinate_page(std::span<const double> values, PageEncoding request) {
	EncodedPage page;
	BitWriter out;
	if (request == PageEncoding::FpDelta && values.size() >= 2) {
		DeltaScan scan = scan_deltas(values);
		unsigned n = compute_best_delta_bits(scan);
		uint64_t delta_bits = 8 + 64 + encoded_body_bits(n, scan);
		if (delta_bits < 64 * uint64_t(values.size())) {
			page.encoding = PageEncoding::FpDelta;
			out.write(uint8_t(PageEncoding::FpDelta), 8);
			fp_delta_encode_width(values, n, out);
			page.bytes = out.take();
			return page;
		}
	}
	page.encoding = PageEncoding::Raw;
	out.write(uint8_t(PageEncoding::Raw), 8);
	for (double v : values) {
		out.write(float_bits(v), 64);
	}
	page.bytes = out.take();
	return page;
}

std::vector<double> decode_coordinate_page(std::span<const uint8_t> payload, size_t count) {
	BitReader in(payload);
	auto flag = uint8_t(in.read(8));
	switch (PageEncoding(flag)) {
	case PageEncoding::Raw: {
		std::vector<double> values;
		values.reserve(count);
		for (size_t i = 0; i < count; ++i) {
			values.push_back(bits_to_float(in.read(64)));
		}
		return values;
	}
	case PageEncoding::FpDelta:
		return fp_delta_decode(in, count);
	}
	throw FormatError("unknown page encoding flag " + std::to_string(flag));
}

} // namespace geocolumn
