#include "chronopulse/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chronopulse {

void NoiseSpec::validate() const {
    if (!(sigma_a >= 0.0)) {
        throw std::invalid_argument("noise sigma_a must be >= 0");
    }
}

double GaussianSampler::uniform_half_open() {
    // 53 random bits -> [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSampler::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = 1.0 - uniform_half_open();
    const double u2 = uniform_half_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t rate_index,
                          std::uint64_t stream, std::uint64_t repeat) {
    std::uint64_t s = mix64(base);
    s = mix64(s ^ rate_index);
    s = mix64(s ^ stream);
    s = mix64(s ^ repeat);
    return s;
}

}  // namespace chronopulse
