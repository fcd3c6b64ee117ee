#include "geocolumn/geojson.hpp"

#include "geocolumn/error.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geocolumn {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &msg, const std::string &path) {
	throw ParseError(msg + " at " + (path.empty() ? "$" : path));
}

Coordinate position_from(const json &j, const std::string &path) {
	if (!j.is_array() || j.size() < 2 || !j[0].is_number() || !j[1].is_number()) {
		fail("expected a [x, y] position", path);
	}
	return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Coordinate> positions_from(const json &j, const std::string &path) {
	if (!j.is_array()) {
		fail("expected an array of positions", path);
	}
	std::vector<Coordinate> out;
	out.reserve(j.size());
	for (size_t i = 0; i < j.size(); ++i) {
		out.push_back(position_from(j[i], path + "[" + std::to_string(i) + "]"));
	}
	return out;
}

Ring ring_from(const json &j, const std::string &path) {
	Ring r = positions_from(j, path);
	if (!r.empty() && !bit_equal(r.front(), r.back())) {
		r.push_back(r.front());
	}
	return r;
}

Polygon polygon_from(const json &j, const std::string &path) {
	if (!j.is_array()) {
		fail("expected an array of rings", path);
	}
	Polygon poly;
	poly.rings.reserve(j.size());
	for (size_t i = 0; i < j.size(); ++i) {
		poly.rings.push_back(ring_from(j[i], path + "[" + std::to_string(i) + "]"));
	}
	return poly;
}

Geometry geometry_from(const json &j, const std::string &path) {
	if (j.is_null()) {
		return Geometry(EmptyGeometry {});
	}
	if (!j.is_object()) {
		fail("expected a geometry object", path);
	}
	auto type_it = j.find("type");
	if (type_it == j.end() || !type_it->is_string()) {
		fail("geometry object lacks a \"type\" string", path);
	}
	const std::string type = type_it->get<std::string>();

	if (type == "GeometryCollection") {
		auto geoms = j.find("geometries");
		if (geoms == j.end() || !geoms->is_array()) {
			fail("GeometryCollection lacks a \"geometries\" array", path);
		}
		GeometryCollection gc;
		gc.members.reserve(geoms->size());
		for (size_t i = 0; i < geoms->size(); ++i) {
			gc.members.push_back(
			    geometry_from((*geoms)[i], path + ".geometries[" + std::to_string(i) + "]"));
		}
		return Geometry(std::move(gc));
	}

	const bool known = type == "Point" || type == "LineString" || type == "Polygon" ||
	                   type == "MultiPoint" || type == "MultiLineString" || type == "MultiPolygon";
	if (!known) {
		fail("unknown geometry type \"" + type + "\"", path);
	}
	auto coords_it = j.find("coordinates");
	if (coords_it == j.end() || !coords_it->is_array()) {
		fail(type + " lacks a \"coordinates\" array", path);
	}
	const json &coords = *coords_it;
	const std::string cpath = path + ".coordinates";
	if (coords.empty()) {
		return Geometry(EmptyGeometry {});
	}
	if (type == "Point") {
		return Geometry(Point {position_from(coords, cpath)});
	}
	if (type == "LineString") {
		return Geometry(LineString {positions_from(coords, cpath)});
	}
	if (type == "Polygon") {
		return Geometry(polygon_from(coords, cpath));
	}
	if (type == "MultiPoint") {
		return Geometry(MultiPoint {positions_from(coords, cpath)});
	}
	if (type == "MultiLineString") {
		MultiLineString mls;
		mls.lines.reserve(coords.size());
		for (size_t i = 0; i < coords.size(); ++i) {
			mls.lines.push_back(LineString {positions_from(coords[i], cpath + "[" + std::to_string(i) + "]")});
		}
		return Geometry(std::move(mls));
	}
	if (type == "MultiPolygon") {
		MultiPolygon mp;
		mp.polygons.reserve(coords.size());
		for (size_t i = 0; i < coords.size(); ++i) {
			mp.polygons.push_back(polygon_from(coords[i], cpath + "[" + std::to_string(i) + "]"));
		}
		return Geometry(std::move(mp));
	}
	fail("unknown geometry type \"" + type + "\"", path);
}

void document_into(const json &j, const std::string &path, std::vector<Geometry> &out) {
	if (j.is_object() && j.contains("type") && j["type"].is_string()) {
		const std::string type = j["type"].get<std::string>();
		if (type == "FeatureCollection") {
			auto features = j.find("features");
			if (features == j.end() || !features->is_array()) {
				fail("FeatureCollection lacks a \"features\" array", path);
			}
			for (size_t i = 0; i < features->size(); ++i) {
				document_into((*features)[i], path + ".features[" + std::to_string(i) + "]", out);
			}
			return;
		}
		if (type == "Feature") {
			auto geom = j.find("geometry");
			if (geom == j.end()) {
				fail("Feature lacks a \"geometry\" member", path);
			}
			out.push_back(geometry_from(*geom, path + ".geometry"));
			return;
		}
	}
	out.push_back(geometry_from(j, path));
}

json coordinate_to_json(Coordinate c) {
	return json::array({c.x, c.y});
}

json coordinates_to_json(const std::vector<Coordinate> &pts) {
	json out = json::array();
	for (Coordinate c : pts) {
		out.push_back(coordinate_to_json(c));
	}
	return out;
}

json polygon_to_json(const Polygon &poly) {
	json out = json::array();
	for (const Ring &ring : poly.rings) {
		out.push_back(coordinates_to_json(ring));
	}
	return out;
}

json geometry_to_json(const Geometry &g) {
	switch (g.value().index()) {
	case 0:
		return {{"type", "Point"}, {"coordinates", json::array()}};
	case 1:
		return {{"type", "Point"}, {"coordinates", coordinate_to_json(g.get<Point>().position)}};
	case 2:
		return {{"type", "LineString"}, {"coordinates", coordinates_to_json(g.get<LineString>().points)}};
	case 3:
		return {{"type", "Polygon"}, {"coordinates", polygon_to_json(g.get<Polygon>())}};
	case 4:
		return {{"type", "MultiPoint"}, {"coordinates", coordinates_to_json(g.get<MultiPoint>().points)}};
	case 5: {
		json coords = json::array();
		for (const LineString &ls : g.get<MultiLineString>().lines) {
			coords.push_back(coordinates_to_json(ls.points));
		}
		return {{"type", "MultiLineString"}, {"coordinates", std::move(coords)}};
	}
	case 6: {
		json coords = json::array();
		for (const Polygon &p : g.get<MultiPolygon>().polygons) {
			coords.push_back(polygon_to_json(p));
		}
		return {{"type", "MultiPolygon"}, {"coordinates", std::move(coords)}};
	}
	default: {
		json members = json::array();
		for (const Geometry &m : g.get<GeometryCollection>().members) {
			members.push_back(geometry_to_json(m));
		}
		return {{"type", "GeometryCollection"}, {"geometries", std::move(members)}};
	}
	}
}

json parse_document(std::string_view text) {
	try {
		return json::parse(text);
	} catch (const json::parse_error &e) {
		throw ParseError(e.what(), e.byte);
	}
}

} // namespace

std::vector<Geometry> parse_geojson(std::string_view text) {
	std::vector<Geometry> out;
	document_into(parse_document(text), "$", out);
	return out;
}

std::string format_geojson(const Geometry &g) {
	return geometry_to_json(g).dump();
}

void read_geojson_file(const std::string &path, const GeometrySink &sink) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw IoError("cannot open " + path + " for reading");
	}
	std::ostringstream buf;
	buf << in.rdbuf();
	if (in.bad()) {
		throw IoError("read failure on " + path);
	}
	for (Geometry &g : parse_geojson(buf.str())) {
		sink(std::move(g));
	}
}

std::vector<Geometry> read_geojson_file(const std::string &path) {
	std::vector<Geometry> out;
	read_geojson_file(path, [&out](Geometry &&g) { out.push_back(std::move(g)); });
	return out;
}

void write_geojson_file(const std::string &path, const std::vector<Geometry> &geoms) {
	std::ofstream out(path, std::ios::trunc | std::ios::binary);
	if (!out) {
		throw IoError("cannot open " + path + " for writing");
	}
	out << "{\"type\":\"FeatureCollection\",\"features\":[";
	for (size_t i = 0; i < geoms.size(); ++i) {
		if (i > 0) {
			out << ',';
		}
		json feature = {{"type", "Feature"}, {"properties", json::object()}, {"geometry", geometry_to_json(geoms[i])}};
		out << feature.dump();
	}
	out << "]}\n";
	out.flush();
	if (!out) {
		throw IoError("write failure on " + path);
	}
}

} // namespace geocolumn
