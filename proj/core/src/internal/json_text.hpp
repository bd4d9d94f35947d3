#pragma once

// Canonical text form for every document the library writes: two-space
// indentation, keys in insertion order, short scalar-only containers on one
// line. Same value -> same bytes.

#include <json.hpp>

#include <string>

namespace hexmono::detail {

using Json = nlohmann::ordered_json;

std::string canonical_dump(const Json& doc);

/// Parses text, rethrowing parse errors as std::runtime_error with location.
Json parse_json(const std::string& text);

std::string fnv1a_hex(const std::string& bytes);

} // namespace hexmono::detail
