#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

namespace dri {

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_exact(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, res.ptr};
}

/// Scientific notation with 17 significant digits (round-trips exactly).
inline std::string format_scientific(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 16);
    return {buf, res.ptr};
}

inline bool parse_double(std::string_view text, double& out) {
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

}  // namespace dri
