#pragma once

#include "geocolumn/geometry.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace geocolumn {

// Shortest decimal text that parses back to the same double bits.
std::string format_double(double v);

// Accepts the seven OGC tags plus GEOMETRYCOLLECTION, case-insensitive.
// "<TAG> EMPTY" parses to the Empty geometry (an empty collection for
// GEOMETRYCOLLECTION). Unclosed polygon rings are closed by repeating the
// first coordinate. Throws ParseError with the byte offset on bad input.
Geometry parse_wkt(std::string_view text);

std::string format_wkt(const Geometry &g);

// One geometry per non-blank line. Parse failures are rewrapped with the
// 1-based line number.
void read_wkt_file(const std::string &path, const GeometrySink &sink);
std::vector<Geometry> read_wkt_file(const std::string &path);

void write_wkt_file(const std::string &path, const std::vector<Geometry> &geoms);

} // namespace geocolumn
