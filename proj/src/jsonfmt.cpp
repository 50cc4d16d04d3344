#include "smoothpoly/jsonfmt.hpp"

#include <cmath>
#include <cstdio>

namespace smoothpoly {

std::string format_double(double v)
{
    if (!std::isfinite(v)) return "null";
    if (v == 0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

void emit(const Json& j, std::string& out)
{
    switch (j.type()) {
    case Json::value_t::object: {
        out += '{';
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) out += ',';
            first = false;
            out += Json(key).dump();
            out += ':';
            emit(value, out);
        }
        out += '}';
        break;
    }
    case Json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ',';
            emit(j[i], out);
        }
        out += ']';
        break;
    }
    case Json::value_t::number_float: out += format_double(j.get<double>()); break;
    default: out += j.dump();
    }
}

}  // namespace

std::string dump12(const Json& j)
{
    std::string out;
    emit(j, out);
    return out;
}

}  // namespace smoothpoly
