#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace tiadc {

/// Locale-independent shortest-faithful decimal formatting ('g' style with
/// the given significant digits). Used for every float that lands in an
/// output file so runs are byte-reproducible.
inline std::string format_double(double value, int significant_digits) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general,
                                   significant_digits);
    return std::string(buf, res.ptr);
}

}  // namespace tiadc
