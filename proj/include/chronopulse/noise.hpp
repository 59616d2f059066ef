#ifndef CHRONOPULSE_NOISE_HPP
#define CHRONOPULSE_NOISE_HPP

#include <cstdint>
#include <random>

namespace chronopulse {

/// Additive Gaussian measurement noise. Identical (sigma_a, seed) always
/// reproduce the same draw sequence.
struct NoiseSpec {
    double sigma_a = 0.0;      ///< standard deviation in amperes, >= 0
    std::uint64_t seed = 0;

    void validate() const;
};

/// Standard-normal sampler: mt19937_64 + Box-Muller. std::normal_distribution
/// is implementation-defined, so the transform is done by hand to keep draw
/// sequences stable for a given seed.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    double uniform_half_open();  // [0, 1)

    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// splitmix64 finalizer; used to derive independent per-stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Derives the seed for one simulation stream (rate index, stream id, repeat)
/// from a base seed. Streams with different tags never collide in practice.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t rate_index,
                          std::uint64_t stream, std::uint64_t repeat);

}  // namespace chronopulse

#endif
