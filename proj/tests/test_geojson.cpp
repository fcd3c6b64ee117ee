#include <geocolumn/error.hpp>
#include <geocolumn/geojson.hpp>

#include <doctest.h>

#include "support.hpp"

#include <fstream>
#include <sstream>
#include <string>

using namespace geocolumn;
namespace ts = testsupport;

TEST_SUITE_BEGIN("geojson");

TEST_CASE("bare geometries parse in document order") {
	auto out = parse_geojson(R"({"type":"Point","coordinates":[1,2]})");
	REQUIRE(out.size() == 1);
	REQUIRE(out[0].is<Point>());
	CHECK(bit_equal(out[0].get<Point>().position, {1, 2}));

	out = parse_geojson(R"({"type":"LineString","coordinates":[[1,1],[4,1],[3,2]]})");
	REQUIRE(out[0].is<LineString>());
	CHECK(out[0].get<LineString>().points.size() == 3);

	out = parse_geojson(R"({"type":"MultiPoint","coordinates":[[1,3],[2,4]]})");
	REQUIRE(out[0].is<MultiPoint>());

	out = parse_geojson(R"({"type":"MultiLineString","coordinates":[[[1,1],[4,1]],[[3,3],[2,4]]]})");
	REQUIRE(out[0].is<MultiLineString>());
	CHECK(out[0].get<MultiLineString>().lines.size() == 2);

	out = parse_geojson(R"({"type":"MultiPolygon","coordinates":
	    [[[[2,4],[5,5],[5,2],[3,2],[2,4]]],[[[1,1],[1,2],[3,1],[1,1]]]]})");
	REQUIRE(out[0].is<MultiPolygon>());
	CHECK(out[0].get<MultiPolygon>().polygons.size() == 2);
}

TEST_CASE("altitude is dropped from positions") {
	auto out = parse_geojson(R"({"type":"Point","coordinates":[1,2,99.5]})");
	CHECK(bit_equal(out[0].get<Point>().position, {1, 2}));
}

TEST_CASE("unclosed polygon rings close on parse") {
	auto out = parse_geojson(R"({"type":"Polygon","coordinates":
	    [[[1,1],[2,4],[5,5],[5,1],[1,1]],[[3,2],[4,2],[4,3]]]})");
	REQUIRE(out[0].is<Polygon>());
	const auto &rings = out[0].get<Polygon>().rings;
	REQUIRE(rings.size() == 2);
	REQUIRE(rings[1].size() == 4);
	CHECK(bit_equal(rings[1].back(), {3, 2}));
}

TEST_CASE("empty coordinates and null geometry read as empty") {
	CHECK(parse_geojson(R"({"type":"Point","coordinates":[]})")[0].is_empty());
	CHECK(parse_geojson(R"({"type":"MultiPolygon","coordinates":[]})")[0].is_empty());
	CHECK(parse_geojson(R"({"type":"Feature","properties":{"a":1},"geometry":null})")[0]
	          .is_empty());
}

TEST_CASE("features and collections unwrap") {
	auto out = parse_geojson(R"({"type":"FeatureCollection","features":[
	    {"type":"Feature","properties":{"name":"a"},"geometry":{"type":"Point","coordinates":[1,2]}},
	    {"type":"Feature","properties":null,"geometry":{"type":"Point","coordinates":[3,4]}}]})");
	REQUIRE(out.size() == 2);
	CHECK(bit_equal(out[0].get<Point>().position, {1, 2}));
	CHECK(bit_equal(out[1].get<Point>().position, {3, 4}));

	out = parse_geojson(R"({"type":"GeometryCollection","geometries":[
	    {"type":"Point","coordinates":[1,2]},
	    {"type":"GeometryCollection","geometries":[{"type":"Point","coordinates":[5,6]}]}]})");
	REQUIRE(out.size() == 1);
	REQUIRE(out[0].is_collection());
	const auto &members = out[0].get<GeometryCollection>().members;
	REQUIRE(members.size() == 2);
	CHECK(members[1].is_collection());
}

TEST_CASE("empty geometry serializes as a point with no coordinates") {
	CHECK(format_geojson(Geometry(EmptyGeometry {})) == R"({"coordinates":[],"type":"Point"})");
	CHECK(format_geojson(Geometry(Point {{1, 2}})) == R"({"coordinates":[1.0,2.0],"type":"Point"})");
}

TEST_CASE("malformed documents raise parse errors") {
	CHECK_THROWS_AS(parse_geojson("{"), ParseError);
	CHECK_THROWS_AS(parse_geojson("42"), ParseError);
	CHECK_THROWS_AS(parse_geojson(R"({"type":"Circle","coordinates":[]})"), ParseError);
	CHECK_THROWS_AS(parse_geojson(R"({"type":"Point"})"), ParseError);
	CHECK_THROWS_AS(parse_geojson(R"({"type":"Point","coordinates":[1]})"), ParseError);
	CHECK_THROWS_AS(parse_geojson(R"({"type":"Point","coordinates":["a","b"]})"), ParseError);
	CHECK_THROWS_AS(parse_geojson(R"({"type":"LineString","coordinates":[[1,2],7]})"), ParseError);
	CHECK_THROWS_AS(parse_geojson(R"({"type":"Feature"})"), ParseError);
	CHECK_THROWS_AS(parse_geojson(R"({"type":"FeatureCollection"})"), ParseError);
	CHECK_THROWS_AS(parse_geojson(R"({"type":"GeometryCollection"})"), ParseError);

	try {
		parse_geojson(R"({"type":"Point","coordinates":[1]})");
		FAIL("expected ParseError");
	} catch (const ParseError &e) {
		CHECK(std::string(e.what()).find("$.coordinates") != std::string::npos);
	}
}

TEST_CASE("random geometries round trip through json") {
	auto corpus = ts::random_corpus(41, 300);
	for (const Geometry &g : corpus) {
		auto back = parse_geojson(format_geojson(g));
		REQUIRE(back.size() == 1);
		if (g.is_empty()) {
			CHECK(back[0].is_empty());
		} else {
			CHECK(back[0] == g);
		}
	}

	GeometryCollection gc;
	gc.members.push_back(Geometry(Point {{1, 2}}));
	gc.members.push_back(Geometry(LineString {{{0, 0}, {1, 1}}}));
	auto back = parse_geojson(format_geojson(Geometry(gc)));
	REQUIRE(back.size() == 1);
	CHECK(back[0] == Geometry(gc));
}

TEST_CASE("files hold a streamed feature collection") {
	ts::TempDir dir;
	auto corpus = ts::random_corpus(42, 100);
	std::string path = dir.file("corpus.geojson");
	write_geojson_file(path, corpus);

	{
		std::ifstream in(path);
		std::ostringstream buf;
		buf << in.rdbuf();
		CHECK(buf.str().rfind("{\"type\":\"FeatureCollection\",\"features\":[", 0) == 0);
	}

	auto back = read_geojson_file(path);
	REQUIRE(back.size() == corpus.size());
	for (size_t i = 0; i < corpus.size(); ++i) {
		if (corpus[i].is_empty()) {
			CHECK(back[i].is_empty());
		} else {
			CHECK(back[i] == corpus[i]);
		}
	}

	CHECK_THROWS_AS(read_geojson_file(dir.file("missing.geojson")), IoError);
}

TEST_SUITE_END();
