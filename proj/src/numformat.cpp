#include "chronopulse/numformat.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "chronopulse/errors.hpp"

namespace chronopulse {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string format_human(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view token) {
    // Trim surrounding blanks; the grammar itself is std::from_chars.
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) {
        token.remove_prefix(1);
    }
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) {
        token.remove_suffix(1);
    }
    if (token.empty()) throw ParseError("empty numeric field");
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw ParseError("malformed numeric field '" + std::string(token) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite numeric field '" + std::string(token) + "'");
    }
    return value;
}

double snap_rate(double rate_hz) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), rate_hz, std::chars_format::general, 12);
    double snapped = 0.0;
    std::from_chars(buf, res.ptr, snapped);
    return snapped;
}

}  // namespace chronopulse
