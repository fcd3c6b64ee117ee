#pragma once

#include "geocolumn/fp_delta.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <variant>
#include <vector>

namespace geocolumn {

struct Coordinate {
	double x = 0;
	double y = 0;
};

// Structural equality is bit-pattern equality so NaN payloads, signed
// zeros, and denormals survive comparisons.
inline bool bit_equal(Coordinate a, Coordinate b) {
	return float_bits(a.x) == float_bits(b.x) && float_bits(a.y) == float_bits(b.y);
}

// Wire codes for the type column. 0 is reserved for empty geometries;
// collections have no code, they are flattened before writing.
enum class GeometryType : uint8_t {
	Empty = 0,
	Point = 1,
	LineString = 2,
	Polygon = 3,
	MultiPoint = 4,
	MultiLineString = 5,
	MultiPolygon = 6,
};

class Geometry;

using Ring = std::vector<Coordinate>;

struct EmptyGeometry {};
struct Point {
	Coordinate position;
};
struct LineString {
	std::vector<Coordinate> points;
};
struct Polygon {
	std::vector<Ring> rings; // rings[0] is the shell, the rest are holes
};
struct MultiPoint {
	std::vector<Coordinate> points;
};
struct MultiLineString {
	std::vector<LineString> lines;
};
struct MultiPolygon {
	std::vector<Polygon> polygons;
};
struct GeometryCollection {
	std::vector<Geometry> members;
};

class Geometry {
public:
	using Variant = std::variant<EmptyGeometry, Point, LineString, Polygon, MultiPoint, MultiLineString,
	                             MultiPolygon, GeometryCollection>;

	Geometry() : value_(EmptyGeometry {}) {
	}
	Geometry(EmptyGeometry g) : value_(std::move(g)) {
	}
	Geometry(Point g) : value_(std::move(g)) {
	}
	Geometry(LineString g) : value_(std::move(g)) {
	}
	Geometry(Polygon g) : value_(std::move(g)) {
	}
	Geometry(MultiPoint g) : value_(std::move(g)) {
	}
	Geometry(MultiLineString g) : value_(std::move(g)) {
	}
	Geometry(MultiPolygon g) : value_(std::move(g)) {
	}
	Geometry(GeometryCollection g) : value_(std::move(g)) {
	}

	template <class T>
	bool is() const {
		return std::holds_alternative<T>(value_);
	}
	template <class T>
	const T &get() const {
		return std::get<T>(value_);
	}
	template <class T>
	T &get() {
		return std::get<T>(value_);
	}

	bool is_empty() const {
		return is<EmptyGeometry>();
	}
	bool is_collection() const {
		return is<GeometryCollection>();
	}

	// Throws InvalidGeometryError for collections; they have no wire code.
	GeometryType type_code() const;

	const Variant &value() const {
		return value_;
	}
	Variant &value() {
		return value_;
	}

private:
	Variant value_;
};

// Structural, bit-exact comparison.
bool operator==(const Geometry &a, const Geometry &b);
inline bool operator!=(const Geometry &a, const Geometry &b) {
	return !(a == b);
}

// Push-style consumer the streaming readers, generator, and sorter feed.
using GeometrySink = std::function<void(Geometry &&)>;

// ── Column representation ──────────────────────────────────────────────

// rep_level 0 starts a new record, 1 a new part, 2 continues the part.
// def_level is 2 for every present coordinate; an empty record is a single
// level entry with def_level 0 and no coordinate payload.
struct LeveledCoordinate {
	Coordinate coord;
	uint8_t rep_level = 0;
	uint8_t def_level = 2;
};

struct ColumnarGeometry {
	GeometryType type = GeometryType::Empty;
	std::vector<LeveledCoordinate> values;
};

enum class RingOrientation {
	Clockwise,
	CounterClockwise,
	Degenerate,
};

// Twice the signed area of a closed ring (shoelace sum), y-up convention:
// positive means counter-clockwise.
double shoelace_sum(std::span<const Coordinate> ring);
RingOrientation ring_orientation(std::span<const Coordinate> ring);

// Decomposes one geometry into the type/part/coordinate representation.
// Polygon rings are normalized on the way out: shells clockwise, holes
// counter-clockwise. Collections must be flattened first.
ColumnarGeometry to_columnar(const Geometry &g);

// Inverse of to_columnar. MultiPolygon parts are reassembled by ring
// orientation: a clockwise ring opens a new polygon, anything else is a
// hole of the pending one.
Geometry from_columnar(const ColumnarGeometry &c);

// Depth-first list of the collection's non-collection members, nesting
// removed, leaf order preserved. Depth is capped at 32.
std::vector<Geometry> flatten_collection(const GeometryCollection &gc);
inline constexpr int kMaxCollectionDepth = 32;

// Same ring convention to_columnar applies, as a plain geometry transform.
Geometry normalize_orientation(Geometry g);

// ── Bounding boxes ─────────────────────────────────────────────────────

// Per-axis fold over coordinates, ignoring NaN. An axis with no finite
// fold stays inverted (min > max) and the envelope does not intersect
// anything.
struct Envelope {
	double min_x = std::numeric_limits<double>::infinity();
	double min_y = std::numeric_limits<double>::infinity();
	double max_x = -std::numeric_limits<double>::infinity();
	double max_y = -std::numeric_limits<double>::infinity();

	bool valid() const {
		return min_x <= max_x && min_y <= max_y;
	}
	void expand(Coordinate c);
	void expand(const Envelope &other);
	// Closed-interval overlap; shared edges and corners count.
	bool intersects(const Envelope &o) const {
		return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
	}
	bool contains(Coordinate c) const {
		return c.x >= min_x && c.x <= max_x && c.y >= min_y && c.y <= max_y;
	}
	Coordinate center() const {
		return {(min_x + max_x) / 2, (min_y + max_y) / 2};
	}
	double width() const {
		return max_x - min_x;
	}
	double height() const {
		return max_y - min_y;
	}
};

Envelope envelope(const Geometry &g);

} // namespace geocolumn
