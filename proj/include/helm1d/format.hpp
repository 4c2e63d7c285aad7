#pragma once

// Locale-independent number formatting shared by the CSV and dump writers.

#include <charconv>
#include <string>

namespace helm1d {

// %.17g-equivalent, enough digits to round-trip any double.
inline std::string format_g17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace helm1d
