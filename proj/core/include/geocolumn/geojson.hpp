#pragma once

#include "geocolumn/geometry.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace geocolumn {

// Accepts any RFC 7946 document shape: a bare geometry, a Feature, or a
// FeatureCollection. Geometries come out in document order. Feature
// properties are discarded and a null Feature geometry reads as Empty, as
// does any geometry with an empty coordinates array. Positions keep their
// first two elements; an altitude, when present, is dropped.
std::vector<Geometry> parse_geojson(std::string_view text);

// One geometry as a GeoJSON object. Empty serializes as
// {"type":"Point","coordinates":[]}.
std::string format_geojson(const Geometry &g);

void read_geojson_file(const std::string &path, const GeometrySink &sink);
std::vector<Geometry> read_geojson_file(const std::string &path);

// Writes a FeatureCollection, one Feature per geometry, streamed so memory
// stays bounded by a single record.
void write_geojson_file(const std::string &path, const std::vector<Geometry> &geoms);

} // namespace geocolumn
