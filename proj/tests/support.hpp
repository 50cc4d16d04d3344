#pragma once

#include <string>
#include <vector>

#include "smoothpoly/poly.hpp"

namespace testing {

inline smoothpoly::FactoredPoly poly(const std::string& text)
{
    return smoothpoly::build_factored({smoothpoly::parse_poly(text)});
}

inline smoothpoly::FactoredPoly factors(const std::vector<std::string>& texts)
{
    std::vector<smoothpoly::IntPoly> parts;
    for (const auto& t : texts) parts.push_back(smoothpoly::parse_poly(t));
    return smoothpoly::build_factored(parts);
}

// The polynomials used across the suites.
inline std::vector<smoothpoly::FactoredPoly> standard_polys()
{
    return {poly("t"), poly("t^2+1"), poly("t^2-2"), factors({"t", "t^2+1"}), factors({"t+1", "t^2+2"})};
}

}  // namespace testing
