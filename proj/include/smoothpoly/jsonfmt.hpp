// JSON text with every floating-point value printed to 12 significant digits.
#pragma once

#include <string>

#include <json.hpp>

namespace smoothpoly {

using Json = nlohmann::ordered_json;

std::string format_double(double v);

/// Compact single-line JSON; non-finite floats become null.
std::string dump12(const Json& j);

}  // namespace smoothpoly
