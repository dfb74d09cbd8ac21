#include "toeplitz/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace toeplitz {

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string display_number(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    double rounded = std::strtod(buf, nullptr);
    if (rounded == 0.0) rounded = 0.0;  // drop negative zero
    std::string s = format_number(rounded);
    if (s.find_first_of(".e") == std::string::npos && s != "inf" && s != "-inf") s += ".0";
    return s;
}

}  // namespace toeplitz
