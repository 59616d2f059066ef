#ifndef CHRONOPULSE_VERSION_HPP
#define CHRONOPULSE_VERSION_HPP

namespace chronopulse {

inline constexpr const char* kToolName = "chronopulse";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace chronopulse

#endif
