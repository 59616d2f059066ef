#ifndef CHRONOPULSE_NUMFORMAT_HPP
#define CHRONOPULSE_NUMFORMAT_HPP

#include <string>
#include <string_view>

namespace chronopulse {

/// Shortest decimal representation that parses back to exactly `x`
/// (std::to_chars round-trip guarantee). Used for all file emission.
std::string format_double(double x);

/// Rounded human-facing representation, 12 significant digits.
std::string format_human(double x);

/// Parses a full token as a double; throws ParseError on any trailing junk,
/// empty input, or non-finite value.
double parse_double(std::string_view token);

/// Decimal-rounds to 12 significant digits; collapses representation error in
/// rates derived from reciprocal sample spacings (e.g. 10.000000000000002).
double snap_rate(double rate_hz);

}  // namespace chronopulse

#endif
