#include "geocolumn/geometry.hpp"

#include "geocolumn/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geocolumn {

// The variant alternatives are declared in wire-code order, so the active
// index doubles as the type code for everything but collections.
GeometryType Geometry::type_code() const {
	if (is_collection()) {
		throw InvalidGeometryError("geometry collection has no wire type code; flatten it first");
	}
	return static_cast<GeometryType>(value_.index());
}

namespace {

bool coords_equal(const std::vector<Coordinate> &a, const std::vector<Coordinate> &b) {
	return a.size() == b.size() &&
	       std::equal(a.begin(), a.end(), b.begin(), [](Coordinate l, Coordinate r) { return bit_equal(l, r); });
}

bool polygons_equal(const Polygon &a, const Polygon &b) {
	return a.rings.size() == b.rings.size() &&
	       std::equal(a.rings.begin(), a.rings.end(), b.rings.begin(), coords_equal);
}

} // namespace

bool operator==(const Geometry &a, const Geometry &b) {
	if (a.value().index() != b.value().index()) {
		return false;
	}
	switch (a.value().index()) {
	case 0:
		return true;
	case 1:
		return bit_equal(a.get<Point>().position, b.get<Point>().position);
	case 2:
		return coords_equal(a.get<LineString>().points, b.get<LineString>().points);
	case 3:
		return polygons_equal(a.get<Polygon>(), b.get<Polygon>());
	case 4:
		return coords_equal(a.get<MultiPoint>().points, b.get<MultiPoint>().points);
	case 5: {
		const auto &la = a.get<MultiLineString>().lines;
		const auto &lb = b.get<MultiLineString>().lines;
		return la.size() == lb.size() &&
		       std::equal(la.begin(), la.end(), lb.begin(),
		                  [](const LineString &l, const LineString &r) { return coords_equal(l.points, r.points); });
	}
	case 6: {
		const auto &pa = a.get<MultiPolygon>().polygons;
		const auto &pb = b.get<MultiPolygon>().polygons;
		return pa.size() == pb.size() && std::equal(pa.begin(), pa.end(), pb.begin(), polygons_equal);
	}
	case 7: {
		const auto &ma = a.get<GeometryCollection>().members;
		const auto &mb = b.get<GeometryCollection>().members;
		return ma.size() == mb.size() && std::equal(ma.begin(), ma.end(), mb.begin(),
		                                            [](const Geometry &l, const Geometry &r) { return l == r; });
	}
	}
	return false;
}

double shoelace_sum(std::span<const Coordinate> ring) {
	// The ring is closed, so the wrap-around edge is the zero-length
	// (last, first) segment and contributes nothing; summing consecutive
	// pairs covers every real edge.
	double sum = 0;
	for (size_t i = 0; i + 1 < ring.size(); ++i) {
		sum += ring[i].x * ring[i + 1].y - ring[i + 1].x * ring[i].y;
	}
	return sum;
}

RingOrientation ring_orientation(std::span<const Coordinate> ring) {
	double s = shoelace_sum(ring);
	if (s > 0) {
		return RingOrientation::CounterClockwise;
	}
	if (s < 0) {
		return RingOrientation::Clockwise;
	}
	return RingOrientation::Degenerate;
}

namespace {

void validate_ring(const Ring &ring, const char *what) {
	if (ring.size() < 4) {
		throw InvalidGeometryError(std::string(what) + " ring has " + std::to_string(ring.size()) +
		                           " coordinates; a closed ring needs at least 4");
	}
	if (!bit_equal(ring.front(), ring.back())) {
		throw InvalidGeometryError(std::string(what) + " ring is not closed");
	}
}

// Returns the ring reversed if its winding differs from `want`; degenerate
// rings pass through unchanged since reversal cannot fix them.
Ring oriented(Ring ring, RingOrientation want) {
	RingOrientation got = ring_orientation(ring);
	if (got != want && got != RingOrientation::Degenerate) {
		std::reverse(ring.begin(), ring.end());
	}
	return ring;
}

Polygon oriented_polygon(const Polygon &poly, const char *context, bool reject_degenerate_shell) {
	if (poly.rings.empty()) {
		throw InvalidGeometryError(std::string(context) + " has no rings");
	}
	Polygon out;
	out.rings.reserve(poly.rings.size());
	for (size_t r = 0; r < poly.rings.size(); ++r) {
		const bool shell = r == 0;
		validate_ring(poly.rings[r], shell ? "shell" : "hole");
		if (shell && reject_degenerate_shell &&
		    ring_orientation(poly.rings[r]) == RingOrientation::Degenerate) {
			// A zero-area shell reads back as a hole of the preceding
			// polygon, silently changing the geometry. Refuse to write it.
			throw InvalidGeometryError("multi polygon shell has zero area and would be indistinguishable "
			                           "from a hole");
		}
		out.rings.push_back(oriented(poly.rings[r],
		                             shell ? RingOrientation::Clockwise : RingOrientation::CounterClockwise));
	}
	return out;
}

void emit_part(std::vector<LeveledCoordinate> &out, std::span<const Coordinate> part, bool &first_part) {
	for (size_t i = 0; i < part.size(); ++i) {
		uint8_t rep = i > 0 ? 2 : first_part ? 0 : 1;
		out.push_back({part[i], rep, 2});
	}
	first_part = false;
}

} // namespace

ColumnarGeometry to_columnar(const Geometry &g) {
	ColumnarGeometry out;
	out.type = g.type_code();
	bool first = true;
	switch (out.type) {
	case GeometryType::Empty:
		out.values.push_back({{0, 0}, 0, 0});
		break;
	case GeometryType::Point:
		emit_part(out.values, {&g.get<Point>().position, 1}, first);
		break;
	case GeometryType::LineString: {
		const auto &ls = g.get<LineString>();
		if (ls.points.size() < 2) {
			throw InvalidGeometryError("line string has fewer than 2 coordinates");
		}
		emit_part(out.values, ls.points, first);
		break;
	}
	case GeometryType::Polygon:
		for (const Ring &ring : oriented_polygon(g.get<Polygon>(), "polygon", false).rings) {
			emit_part(out.values, ring, first);
		}
		break;
	case GeometryType::MultiPoint: {
		const auto &mp = g.get<MultiPoint>();
		if (mp.points.empty()) {
			throw InvalidGeometryError("multi point has no points");
		}
		for (const Coordinate &c : mp.points) {
			emit_part(out.values, {&c, 1}, first);
		}
		break;
	}
	case GeometryType::MultiLineString: {
		const auto &mls = g.get<MultiLineString>();
		if (mls.lines.empty()) {
			throw InvalidGeometryError("multi line string has no lines");
		}
		for (const LineString &ls : mls.lines) {
			if (ls.points.size() < 2) {
				throw InvalidGeometryError("multi line string element has fewer than 2 coordinates");
			}
			emit_part(out.values, ls.points, first);
		}
		break;
	}
	case GeometryType::MultiPolygon: {
		const auto &mp = g.get<MultiPolygon>();
		if (mp.polygons.empty()) {
			throw InvalidGeometryError("multi polygon has no polygons");
		}
		for (const Polygon &p : mp.polygons) {
			for (const Ring &ring : oriented_polygon(p, "multi polygon element", true).rings) {
				emit_part(out.values, ring, first);
			}
		}
		break;
	}
	}
	return out;
}

namespace {

// Splits the level stream back into parts, enforcing the record grammar
// 0 2* (1 2*)*: exactly one leading 0, parts delimited by 1.
std::vector<Ring> split_parts(const ColumnarGeometry &c) {
	std::vector<Ring> parts;
	for (size_t i = 0; i < c.values.size(); ++i) {
		const LeveledCoordinate &v = c.values[i];
		if (v.def_level != 2) {
			throw FormatError("definition level " + std::to_string(v.def_level) +
			                  " inside a non-empty record");
		}
		if (i == 0) {
			if (v.rep_level != 0) {
				throw FormatError("record does not start with repetition level 0");
			}
			parts.emplace_back();
		} else if (v.rep_level == 1) {
			parts.emplace_back();
		} else if (v.rep_level == 2) {
			// continue current part
		} else {
			throw FormatError("repetition level " + std::to_string(v.rep_level) +
			                  " is not valid past the first value");
		}
		parts.back().push_back(v.coord);
	}
	return parts;
}

// Stored ring parts may elide the closing repeat of the first coordinate;
// reassembly restores it before the ring is handed out.
Ring checked_ring(Ring ring) {
	if (!ring.empty() && !bit_equal(ring.front(), ring.back())) {
		ring.push_back(ring.front());
	}
	if (ring.size() < 4) {
		throw FormatError("stored ring holds fewer than 3 distinct coordinates");
	}
	return ring;
}

} // namespace

Geometry from_columnar(const ColumnarGeometry &c) {
	if (c.type == GeometryType::Empty) {
		if (c.values.size() != 1 || c.values[0].def_level != 0) {
			throw FormatError("empty geometry must carry exactly one definition-level-0 entry");
		}
		return Geometry(EmptyGeometry {});
	}

	std::vector<Ring> parts = split_parts(c);
	if (parts.empty()) {
		throw FormatError("non-empty geometry type with no coordinate values");
	}

	switch (c.type) {
	case GeometryType::Point:
		if (parts.size() != 1 || parts[0].size() != 1) {
			throw FormatError("point must be a single part with a single coordinate");
		}
		return Geometry(Point {parts[0][0]});
	case GeometryType::LineString:
		if (parts.size() != 1 || parts[0].size() < 2) {
			throw FormatError("line string must be a single part of at least 2 coordinates");
		}
		return Geometry(LineString {std::move(parts[0])});
	case GeometryType::Polygon: {
		Polygon poly;
		poly.rings.reserve(parts.size());
		for (Ring &part : parts) {
			poly.rings.push_back(checked_ring(std::move(part)));
		}
		return Geometry(std::move(poly));
	}
	case GeometryType::MultiPoint: {
		MultiPoint mp;
		mp.points.reserve(parts.size());
		for (const Ring &part : parts) {
			if (part.size() != 1) {
				throw FormatError("multi point part must hold exactly one coordinate");
			}
			mp.points.push_back(part[0]);
		}
		return Geometry(std::move(mp));
	}
	case GeometryType::MultiLineString: {
		MultiLineString mls;
		mls.lines.reserve(parts.size());
		for (Ring &part : parts) {
			if (part.size() < 2) {
				throw FormatError("multi line string part has fewer than 2 coordinates");
			}
			mls.lines.push_back(LineString {std::move(part)});
		}
		return Geometry(std::move(mls));
	}
	case GeometryType::MultiPolygon: {
		// Ring winding delimits the sub-polygons: a clockwise ring opens a
		// new polygon, anything else is a hole of the one being built.
		MultiPolygon mp;
		for (Ring &part : parts) {
			Ring ring = checked_ring(std::move(part));
			if (ring_orientation(ring) == RingOrientation::Clockwise) {
				mp.polygons.emplace_back();
			} else if (mp.polygons.empty()) {
				throw FormatError("multi polygon stream starts with a hole ring");
			}
			mp.polygons.back().rings.push_back(std::move(ring));
		}
		return Geometry(std::move(mp));
	}
	default:
		throw FormatError("unknown geometry type code " +
		                  std::to_string(static_cast<unsigned>(c.type)));
	}
}

namespace {

void flatten_into(const GeometryCollection &gc, std::vector<Geometry> &out, int depth) {
	if (depth > kMaxCollectionDepth) {
		throw InvalidGeometryError("geometry collection nested deeper than " +
		                           std::to_string(kMaxCollectionDepth) + " levels");
	}
	for (const Geometry &member : gc.members) {
		if (member.is_collection()) {
			flatten_into(member.get<GeometryCollection>(), out, depth + 1);
		} else {
			out.push_back(member);
		}
	}
}

} // namespace

std::vector<Geometry> flatten_collection(const GeometryCollection &gc) {
	std::vector<Geometry> out;
	flatten_into(gc, out, 1);
	return out;
}

Geometry normalize_orientation(Geometry g) {
	if (g.is<Polygon>()) {
		return Geometry(oriented_polygon(g.get<Polygon>(), "polygon", false));
	}
	if (g.is<MultiPolygon>()) {
		MultiPolygon out;
		out.polygons.reserve(g.get<MultiPolygon>().polygons.size());
		for (const Polygon &p : g.get<MultiPolygon>().polygons) {
			out.polygons.push_back(oriented_polygon(p, "multi polygon element", true));
		}
		return Geometry(std::move(out));
	}
	if (g.is_collection()) {
		GeometryCollection out;
		out.members.reserve(g.get<GeometryCollection>().members.size());
		for (Geometry &member : g.get<GeometryCollection>().members) {
			out.members.push_back(normalize_orientation(std::move(member)));
		}
		return Geometry(std::move(out));
	}
	return g;
}

void Envelope::expand(Coordinate c) {
	if (!std::isnan(c.x)) {
		min_x = std::min(min_x, c.x);
		max_x = std::max(max_x, c.x);
	}
	if (!std::isnan(c.y)) {
		min_y = std::min(min_y, c.y);
		max_y = std::max(max_y, c.y);
	}
}

void Envelope::expand(const Envelope &other) {
	// Folding an inverted (empty) envelope is a no-op because its bounds
	// are the fold identities.
	min_x = std::min(min_x, other.min_x);
	min_y = std::min(min_y, other.min_y);
	max_x = std::max(max_x, other.max_x);
	max_y = std::max(max_y, other.max_y);
}

namespace {

void expand_by(Envelope &env, const Geometry &g) {
	switch (g.value().index()) {
	case 0:
		break;
	case 1:
		env.expand(g.get<Point>().position);
		break;
	case 2:
		for (Coordinate c : g.get<LineString>().points) {
			env.expand(c);
		}
		break;
	case 3:
		for (const Ring &ring : g.get<Polygon>().rings) {
			for (Coordinate c : ring) {
				env.expand(c);
			}
		}
		break;
	case 4:
		for (Coordinate c : g.get<MultiPoint>().points) {
			env.expand(c);
		}
		break;
	case 5:
		for (const LineString &ls : g.get<MultiLineString>().lines) {
			for (Coordinate c : ls.points) {
				env.expand(c);
			}
		}
		break;
	case 6:
		for (const Polygon &p : g.get<MultiPolygon>().polygons) {
			for (const Ring &ring : p.rings) {
				for (Coordinate c : ring) {
					env.expand(c);
				}
			}
		}
		break;
	case 7:
		for (const Geometry &member : g.get<GeometryCollection>().members) {
			expand_by(env, member);
		}
		break;
	}
}

} // namespace

Envelope envelope(const Geometry &g) {
	Envelope env;
	expand_by(env, g);
	return env;
}

} // namespace geocolumn
