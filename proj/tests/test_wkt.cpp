#include <geocolumn/error.hpp>
#include <geocolumn/wkt.hpp>

#include <doctest.h>

#include "support.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>

using namespace geocolumn;
namespace ts = testsupport;

TEST_SUITE_BEGIN("wkt");

TEST_CASE("format_double emits the shortest exact decimal") {
	CHECK(format_double(1.0) == "1");
	CHECK(format_double(0.5) == "0.5");
	CHECK(format_double(0.1) == "0.1");
	CHECK(format_double(-0.0) == "-0");
	CHECK(format_double(1e300) == "1e+300");

	std::mt19937_64 rng(31);
	for (int i = 0; i < 2000; ++i) {
		double v = ts::adversarial_double(rng);
		std::string s = format_double(v);
		double back = std::strtod(s.c_str(), nullptr);
		if (std::isnan(v)) {
			CHECK(std::isnan(back));
		} else {
			CHECK(float_bits(back) == float_bits(v));
		}
	}
}

TEST_CASE("point parses and formats") {
	Geometry g = parse_wkt("POINT (1 2)");
	REQUIRE(g.is<Point>());
	CHECK(bit_equal(g.get<Point>().position, {1, 2}));
	CHECK(format_wkt(g) == "POINT (1 2)");

	g = parse_wkt("point(1.5 -2.5)");
	CHECK(bit_equal(g.get<Point>().position, {1.5, -2.5}));

	g = parse_wkt("  POINT ( +3   4.0 ) ");
	CHECK(bit_equal(g.get<Point>().position, {3, 4}));

	g = parse_wkt("POINT (1e3 -2.5e-2)");
	CHECK(bit_equal(g.get<Point>().position, {1000, -0.025}));
}

TEST_CASE("line string keeps coordinate order") {
	Geometry g = parse_wkt("LINESTRING (1 1, 4 1, 3 2)");
	REQUIRE(g.is<LineString>());
	const auto &pts = g.get<LineString>().points;
	REQUIRE(pts.size() == 3);
	CHECK(bit_equal(pts[1], {4, 1}));
	CHECK(format_wkt(g) == "LINESTRING (1 1, 4 1, 3 2)");
}

TEST_CASE("polygon closes unclosed rings on parse") {
	Geometry g = parse_wkt("POLYGON ((1 1, 2 4, 5 5, 5 1, 1 1), (3 2, 4 2, 4 3))");
	REQUIRE(g.is<Polygon>());
	const auto &rings = g.get<Polygon>().rings;
	REQUIRE(rings.size() == 2);
	CHECK(rings[0].size() == 5);
	REQUIRE(rings[1].size() == 4);
	CHECK(bit_equal(rings[1].back(), {3, 2}));
	CHECK(format_wkt(g) == "POLYGON ((1 1, 2 4, 5 5, 5 1, 1 1), (3 2, 4 2, 4 3, 3 2))");
}

TEST_CASE("multi point accepts both nesting spellings") {
	Geometry bare = parse_wkt("MULTIPOINT (1 3, 2 4, 4 3)");
	Geometry wrapped = parse_wkt("MULTIPOINT ((1 3), (2 4), (4 3))");
	CHECK(bare == wrapped);
	CHECK(format_wkt(bare) == "MULTIPOINT ((1 3), (2 4), (4 3))");
}

TEST_CASE("multi line string and multi polygon parse") {
	Geometry g = parse_wkt("MULTILINESTRING ((1 1, 4 1, 3 2), (3 3, 2 4, 1 3))");
	REQUIRE(g.is<MultiLineString>());
	CHECK(g.get<MultiLineString>().lines.size() == 2);

	g = parse_wkt("MULTIPOLYGON (((2 4, 5 5, 5 2, 3 2, 2 4), (3 3, 4 3, 4 4, 3 3)), "
	              "((1 1, 1 2, 3 1, 1 1)))");
	REQUIRE(g.is<MultiPolygon>());
	const auto &polys = g.get<MultiPolygon>().polygons;
	REQUIRE(polys.size() == 2);
	CHECK(polys[0].rings.size() == 2);
	CHECK(polys[1].rings.size() == 1);
}

TEST_CASE("collections nest and flatten later") {
	Geometry g = parse_wkt("GEOMETRYCOLLECTION (POINT (1 2), "
	                       "GEOMETRYCOLLECTION (LINESTRING (0 0, 1 1)))");
	REQUIRE(g.is_collection());
	const auto &members = g.get<GeometryCollection>().members;
	REQUIRE(members.size() == 2);
	CHECK(members[1].is_collection());
	CHECK(format_wkt(g) ==
	      "GEOMETRYCOLLECTION (POINT (1 2), GEOMETRYCOLLECTION (LINESTRING (0 0, 1 1)))");
}

TEST_CASE("EMPTY parses for every tag and formats canonically") {
	for (const char *text : {"POINT EMPTY", "LINESTRING EMPTY", "POLYGON EMPTY",
	                         "MULTIPOINT EMPTY", "MULTILINESTRING empty", "MULTIPOLYGON EMPTY"}) {
		CHECK(parse_wkt(text).is_empty());
	}
	CHECK(format_wkt(Geometry(EmptyGeometry {})) == "POINT EMPTY");

	Geometry gc = parse_wkt("GEOMETRYCOLLECTION EMPTY");
	REQUIRE(gc.is_collection());
	CHECK(gc.get<GeometryCollection>().members.empty());
	CHECK(format_wkt(gc) == "GEOMETRYCOLLECTION EMPTY");
}

TEST_CASE("non-finite coordinates pass through") {
	Geometry g = parse_wkt("POINT (nan inf)");
	CHECK(std::isnan(g.get<Point>().position.x));
	CHECK(std::isinf(g.get<Point>().position.y));
	CHECK(format_wkt(g) == "POINT (nan inf)");
	CHECK(format_wkt(parse_wkt("POINT (-inf 0)")) == "POINT (-inf 0)");
}

TEST_CASE("parse errors carry the byte offset") {
	CHECK_THROWS_AS(parse_wkt(""), ParseError);
	CHECK_THROWS_AS(parse_wkt("CIRCLE (0 0)"), ParseError);
	CHECK_THROWS_AS(parse_wkt("POINT (1)"), ParseError);
	CHECK_THROWS_AS(parse_wkt("POINT (1 2"), ParseError);
	CHECK_THROWS_AS(parse_wkt("POINT ()"), ParseError);
	CHECK_THROWS_AS(parse_wkt("LINESTRING 1 2"), ParseError);
	CHECK_THROWS_AS(parse_wkt("MULTIPOINT ((1 2, 3 4))"), ParseError);

	try {
		parse_wkt("POINT (1 2) x");
		FAIL("expected ParseError");
	} catch (const ParseError &e) {
		CHECK(e.position() == 12);
	}
}

TEST_CASE("random geometries round trip through text") {
	auto corpus = ts::random_corpus(32, 500);
	for (const Geometry &g : corpus) {
		Geometry back = parse_wkt(format_wkt(g));
		if (g.is_empty()) {
			CHECK(back.is_empty());
		} else {
			CHECK(back == g);
		}
	}
}

TEST_CASE("files hold one geometry per line") {
	ts::TempDir dir;
	auto corpus = ts::random_corpus(33, 100);
	std::string path = dir.file("corpus.wkt");
	write_wkt_file(path, corpus);

	auto back = read_wkt_file(path);
	REQUIRE(back.size() == corpus.size());
	for (size_t i = 0; i < corpus.size(); ++i) {
		if (corpus[i].is_empty()) {
			CHECK(back[i].is_empty());
		} else {
			CHECK(back[i] == corpus[i]);
		}
	}
}

TEST_CASE("blank lines are skipped and errors name the line") {
	ts::TempDir dir;
	std::string path = dir.file("mixed.wkt");
	{
		std::ofstream out(path);
		out << "POINT (1 1)\n\n   \nJUNK HERE\n";
	}
	try {
		read_wkt_file(path);
		FAIL("expected ParseError");
	} catch (const ParseError &e) {
		CHECK(std::string(e.what()).find("line 4") != std::string::npos);
	}

	CHECK_THROWS_AS(read_wkt_file(dir.file("missing.wkt")), IoError);
}

TEST_SUITE_END();
