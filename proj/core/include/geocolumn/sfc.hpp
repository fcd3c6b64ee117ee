#pragma once

#include "geocolumn/geometry.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace geocolumn {

enum class SortCurve : uint8_t {
	None = 0,
	Z = 1,
	Hilbert = 2,
};

// Grid each batch's bounding box is mapped onto before key computation.
// Order 16 keeps a Hilbert index inside one 64-bit word.
inline constexpr unsigned kGridOrder = 16;
inline constexpr uint32_t kGridCells = 1u << kGridOrder;

// Morton interleave, x in the even bit positions starting at bit 0.
uint64_t z_key(uint32_t cx, uint32_t cy);

// Hilbert index via the canonical rotate/reflect walk over a cells x cells
// grid; cells must be a power of two. Cells outside the grid are clamped
// to its edge.
uint64_t hilbert_key(uint32_t cx, uint32_t cy, uint32_t cells = kGridCells);

// Maps v within [lo, hi] onto [0, kGridCells). Out-of-range values clamp;
// NaN and a collapsed axis (hi <= lo) map to cell 0.
uint32_t grid_cell(double v, double lo, double hi);

// Center of the geometry's bounding box, the point a record is keyed by.
// Throws InvalidGeometryError when no coordinate is finite on some axis.
Coordinate representative_point(const Geometry &g);

// Buffers records up to batch_size, then emits each batch in SFC-key order
// through the sink, stable for equal keys. Curve None forwards records
// untouched. Records with no locatable point (Empty) key as 0 and sort to
// the front of their batch.
class BatchSorter {
public:
	using Sink = std::function<void(Geometry &&)>;

	BatchSorter(SortCurve curve, size_t batch_size, Sink sink);

	void add(Geometry g);

	// Flushes the trailing partial batch. Call once, after the last add.
	void finish();

	size_t buffered() const {
		return buffer_.size();
	}

private:
	void flush();

	SortCurve curve_;
	size_t batch_size_;
	Sink sink_;
	std::vector<Geometry> buffer_;
	std::vector<Coordinate> reps_; // parallel to buffer_; NaN = no locatable point
	Envelope bbox_;
};

// Sorts a whole record list through a BatchSorter in one call.
std::vector<Geometry> sort_stream(std::vector<Geometry> records, SortCurve curve, size_t batch_size);

} // namespace geocolumn
