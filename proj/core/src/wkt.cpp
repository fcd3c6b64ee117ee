#include "geocolumn/wkt.hpp"

#include "geocolumn/error.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

namespace geocolumn {

std::string format_double(double v) {
	char buf[32];
	auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
	(void)ec; // 32 chars always fit the shortest form
	return std::string(buf, end);
}

namespace {

class WktParser {
public:
	explicit WktParser(std::string_view text) : text_(text) {
	}

	Geometry parse() {
		Geometry g = geometry();
		skip_ws();
		if (pos_ != text_.size()) {
			fail("trailing characters after geometry");
		}
		return g;
	}

private:
	[[noreturn]] void fail(const std::string &msg) const {
		throw ParseError(msg, pos_);
	}

	void skip_ws() {
		while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
			++pos_;
		}
	}

	bool consume(char c) {
		skip_ws();
		if (pos_ < text_.size() && text_[pos_] == c) {
			++pos_;
			return true;
		}
		return false;
	}

	void expect(char c) {
		if (!consume(c)) {
			fail(std::string("expected '") + c + "'");
		}
	}

	// Uppercased run of letters; empty if the next character is not one.
	std::string word() {
		skip_ws();
		std::string w;
		while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
			w += char(std::toupper(static_cast<unsigned char>(text_[pos_])));
			++pos_;
		}
		return w;
	}

	double number() {
		skip_ws();
		const char *begin = text_.data() + pos_;
		const char *end = text_.data() + text_.size();
		if (begin != end && *begin == '+') {
			++begin; // from_chars takes a leading '-' but not '+'
		}
		double out = 0;
		auto [ptr, ec] = std::from_chars(begin, end, out);
		if (ec != std::errc() || ptr == begin) {
			fail("expected a number");
		}
		pos_ = size_t(ptr - text_.data());
		return out;
	}

	Coordinate coordinate() {
		double x = number();
		double y = number();
		return {x, y};
	}

	std::vector<Coordinate> coordinate_list() {
		std::vector<Coordinate> pts;
		expect('(');
		do {
			pts.push_back(coordinate());
		} while (consume(','));
		expect(')');
		return pts;
	}

	Ring ring() {
		Ring r = coordinate_list();
		if (!r.empty() && !bit_equal(r.front(), r.back())) {
			r.push_back(r.front());
		}
		return r;
	}

	Polygon polygon_body() {
		Polygon poly;
		expect('(');
		do {
			poly.rings.push_back(ring());
		} while (consume(','));
		expect(')');
		return poly;
	}

	bool at_empty() {
		size_t save = pos_;
		if (word() == "EMPTY") {
			return true;
		}
		pos_ = save;
		return false;
	}

	Geometry geometry() {
		std::string tag = word();
		if (tag.empty()) {
			fail("expected a geometry tag");
		}
		if (tag == "GEOMETRYCOLLECTION") {
			GeometryCollection gc;
			if (at_empty()) {
				return Geometry(std::move(gc));
			}
			expect('(');
			do {
				gc.members.push_back(geometry());
			} while (consume(','));
			expect(')');
			return Geometry(std::move(gc));
		}
		if (tag != "POINT" && tag != "LINESTRING" && tag != "POLYGON" && tag != "MULTIPOINT" &&
		    tag != "MULTILINESTRING" && tag != "MULTIPOLYGON") {
			fail("unknown geometry tag " + tag);
		}
		if (at_empty()) {
			return Geometry(EmptyGeometry {});
		}
		if (tag == "POINT") {
			expect('(');
			Coordinate c = coordinate();
			expect(')');
			return Geometry(Point {c});
		}
		if (tag == "LINESTRING") {
			return Geometry(LineString {coordinate_list()});
		}
		if (tag == "POLYGON") {
			return Geometry(polygon_body());
		}
		if (tag == "MULTIPOINT") {
			// Both spellings occur in the wild: (1 2, 3 4) and ((1 2), (3 4)).
			MultiPoint mp;
			expect('(');
			do {
				if (consume('(')) {
					mp.points.push_back(coordinate());
					expect(')');
				} else {
					mp.points.push_back(coordinate());
				}
			} while (consume(','));
			expect(')');
			return Geometry(std::move(mp));
		}
		if (tag == "MULTILINESTRING") {
			MultiLineString mls;
			expect('(');
			do {
				mls.lines.push_back(LineString {coordinate_list()});
			} while (consume(','));
			expect(')');
			return Geometry(std::move(mls));
		}
		MultiPolygon mp;
		expect('(');
		do {
			mp.polygons.push_back(polygon_body());
		} while (consume(','));
		expect(')');
		return Geometry(std::move(mp));
	}

	std::string_view text_;
	size_t pos_ = 0;
};

void append_coordinate(std::string &out, Coordinate c) {
	out += format_double(c.x);
	out += ' ';
	out += format_double(c.y);
}

void append_coordinate_list(std::string &out, const std::vector<Coordinate> &pts) {
	out += '(';
	for (size_t i = 0; i < pts.size(); ++i) {
		if (i > 0) {
			out += ", ";
		}
		append_coordinate(out, pts[i]);
	}
	out += ')';
}

void append_polygon_body(std::string &out, const Polygon &poly) {
	out += '(';
	for (size_t i = 0; i < poly.rings.size(); ++i) {
		if (i > 0) {
			out += ", ";
		}
		append_coordinate_list(out, poly.rings[i]);
	}
	out += ')';
}

void append_wkt(std::string &out, const Geometry &g);

} // namespace

Geometry parse_wkt(std::string_view text) {
	return WktParser(text).parse();
}

namespace {

void append_wkt(std::string &out, const Geometry &g) {
	switch (g.value().index()) {
	case 0:
		// The column format keeps no original type for empties, so one
		// canonical spelling serves them all.
		out += "POINT EMPTY";
		break;
	case 1:
		out += "POINT (";
		append_coordinate(out, g.get<Point>().position);
		out += ')';
		break;
	case 2:
		out += "LINESTRING ";
		append_coordinate_list(out, g.get<LineString>().points);
		break;
	case 3:
		out += "POLYGON ";
		append_polygon_body(out, g.get<Polygon>());
		break;
	case 4: {
		out += "MULTIPOINT (";
		const auto &pts = g.get<MultiPoint>().points;
		for (size_t i = 0; i < pts.size(); ++i) {
			if (i > 0) {
				out += ", ";
			}
			out += '(';
			append_coordinate(out, pts[i]);
			out += ')';
		}
		out += ')';
		break;
	}
	case 5: {
		out += "MULTILINESTRING (";
		const auto &lines = g.get<MultiLineString>().lines;
		for (size_t i = 0; i < lines.size(); ++i) {
			if (i > 0) {
				out += ", ";
			}
			append_coordinate_list(out, lines[i].points);
		}
		out += ')';
		break;
	}
	case 6: {
		out += "MULTIPOLYGON (";
		const auto &polys = g.get<MultiPolygon>().polygons;
		for (size_t i = 0; i < polys.size(); ++i) {
			if (i > 0) {
				out += ", ";
			}
			append_polygon_body(out, polys[i]);
		}
		out += ')';
		break;
	}
	case 7: {
		const auto &members = g.get<GeometryCollection>().members;
		if (members.empty()) {
			out += "GEOMETRYCOLLECTION EMPTY";
			break;
		}
		out += "GEOMETRYCOLLECTION (";
		for (size_t i = 0; i < members.size(); ++i) {
			if (i > 0) {
				out += ", ";
			}
			append_wkt(out, members[i]);
		}
		out += ')';
		break;
	}
	}
}

} // namespace

std::string format_wkt(const Geometry &g) {
	std::string out;
	append_wkt(out, g);
	return out;
}

void read_wkt_file(const std::string &path, const GeometrySink &sink) {
	std::ifstream in(path);
	if (!in) {
		throw IoError("cannot open " + path + " for reading");
	}
	std::string line;
	size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		std::string_view trimmed(line);
		while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) {
			trimmed.remove_suffix(1);
		}
		while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) {
			trimmed.remove_prefix(1);
		}
		if (trimmed.empty()) {
			continue;
		}
		try {
			sink(parse_wkt(trimmed));
		} catch (const ParseError &e) {
			throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.position());
		}
	}
	if (in.bad()) {
		throw IoError("read failure on " + path);
	}
}

std::vector<Geometry> read_wkt_file(const std::string &path) {
	std::vector<Geometry> out;
	read_wkt_file(path, [&out](Geometry &&g) { out.push_back(std::move(g)); });
	return out;
}

void write_wkt_file(const std::string &path, const std::vector<Geometry> &geoms) {
	std::ofstream out(path, std::ios::trunc);
	if (!out) {
		throw IoError("cannot open " + path + " for writing");
	}
	for (const Geometry &g : geoms) {
		out << format_wkt(g) << '\n';
	}
	out.flush();
	if (!out) {
		throw IoError("write failure on " + path);
	}
}

} // namespace geocolumn
