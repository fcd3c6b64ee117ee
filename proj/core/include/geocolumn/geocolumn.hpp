#pragma once

#include "geocolumn/bitstream.hpp"
#include "geocolumn/container.hpp"
#include "geocolumn/error.hpp"
#include "geocolumn/footer.hpp"
#include "geocolumn/fp_delta.hpp"
#include "geocolumn/geojson.hpp"
#include "geocolumn/geometry.hpp"
#include "geocolumn/inspect.hpp"
#include "geocolumn/reader.hpp"
#include "geocolumn/rle.hpp"
#include "geocolumn/sfc.hpp"
#include "geocolumn/synthetic.hpp"
#include "geocolumn/wkt.hpp"
#include "geocolumn/writer.hpp"
