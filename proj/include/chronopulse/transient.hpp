#ifndef CHRONOPULSE_TRANSIENT_HPP
#define CHRONOPULSE_TRANSIENT_HPP

#include <cstddef>
#include <vector>

namespace chronopulse {

struct Sample {
    double t_s;         ///< timestamp in seconds
    double current_a;   ///< measured current in amperes
};

/// Absolute grid tolerance accepted when ingesting external data files.
/// Internally generated grids are exact to machine precision.
inline constexpr double kFileGridTolS = 1e-9;

/// A uniformly sampled current-vs-time series.
///
/// The grid starts at the first sample period and never contains t = 0:
/// t_i = i / rate_hz for i = 1..N. Construction validates that timestamps
/// are strictly increasing and sit on that grid within `grid_tol_s`
/// (default: 1e-12 relative to the sample period).
class Transient {
public:
    Transient(double rate_hz, std::vector<Sample> samples, double grid_tol_s = -1.0);

    /// Builds the exact grid t_i = i / rate_hz over the given currents.
    static Transient from_currents(double rate_hz, const std::vector<double>& currents_a);

    double rate_hz() const { return rate_hz_; }
    double period_s() const { return 1.0 / rate_hz_; }
    const std::vector<Sample>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }

    const Sample& operator[](std::size_t i) const { return samples_[i]; }
    const Sample& front() const { return samples_.front(); }
    const Sample& back() const { return samples_.back(); }

    /// Timestamp of the last sample.
    double end_s() const { return samples_.back().t_s; }

    /// Terminal transient diffusion current: the value at the final grid point.
    double tdc_a() const { return samples_.back().current_a; }

    std::vector<double> times() const;
    std::vector<double> currents() const;

private:
    double rate_hz_;
    std::vector<Sample> samples_;
};

/// True when both series have the same length, rate and timestamps.
bool same_grid(const Transient& a, const Transient& b);

/// True when `pulse` shares `baseline`'s rate and its samples coincide with
/// the leading samples of `baseline`'s grid.
bool is_grid_prefix(const Transient& pulse, const Transient& baseline);

/// Keeps the samples with t_i <= window_s + 1e-12; the rate is unchanged.
/// Throws std::invalid_argument when the window is not positive or is
/// shorter than one sample period.
Transient truncate(const Transient& tr, double window_s);

}  // namespace chronopulse

#endif
