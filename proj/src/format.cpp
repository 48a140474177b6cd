#include "eigenbranch/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace eigenbranch {

std::string format_sci(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 12);
    return std::string(buf, res.ptr);
}

double round_sci(double v)
{
    if (!std::isfinite(v)) return v;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 12);
    double out = v;
    std::from_chars(buf, res.ptr, out);
    return out;
}

}  // namespace eigenbranch
