#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geocolumn {

class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Malformed input text (WKT, GeoJSON). Carries the byte offset of the
// offending token within the parsed buffer when one is known; GeoJSON
// errors locate themselves by document path in the message instead.
class ParseError : public Error {
public:
	explicit ParseError(const std::string &msg) : Error(msg) {
	}
	ParseError(const std::string &msg, size_t position)
	    : Error(msg + " (at offset " + std::to_string(position) + ")"), position_(position) {
	}
	size_t position() const {
		return position_;
	}

private:
	size_t position_ = 0;
};

// A file that is not in the expected format (bad magic, unsupported version,
// unknown type or encoding codes).
class FormatError : public Error {
public:
	using Error::Error;
};

// A file that claims to be in the expected format but whose contents are
// inconsistent (truncation, count mismatches, invalid level streams).
class CorruptionError : public FormatError {
public:
	using FormatError::FormatError;
};

class IoError : public Error {
public:
	using Error::Error;
};

// A geometry violating a structural invariant (unclosed ring, too few
// points, a collection where a flattened stream is required).
class InvalidGeometryError : public Error {
public:
	using Error::Error;
};

} // namespace geocolumn
