#include "chronopulse/transient.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "chronopulse/errors.hpp"

namespace chronopulse {

namespace {

// Window comparison tolerance for truncate(), absolute seconds.
constexpr double kWindowTolS = 1e-12;

}  // namespace

Transient::Transient(double rate_hz, std::vector<Sample> samples, double grid_tol_s)
    : rate_hz_(rate_hz), samples_(std::move(samples)) {
    if (!(rate_hz_ > 0.0) || !std::isfinite(rate_hz_)) {
        throw std::invalid_argument("sampling rate must be positive and finite");
    }
    if (samples_.empty()) {
        throw std::invalid_argument("transient needs at least one sample");
    }
    const double period = 1.0 / rate_hz_;
    const double tol = grid_tol_s >= 0.0 ? grid_tol_s : 1e-12 * period;
    if (std::abs(samples_.front().t_s - period) > tol) {
        throw std::invalid_argument("grid must start at one sample period (t = 1/rate), got t = " +
                                    std::to_string(samples_.front().t_s));
    }
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        const double dt = samples_[i].t_s - samples_[i - 1].t_s;
        if (!(dt > 0.0)) {
            throw std::invalid_argument("timestamps must be strictly increasing (sample " +
                                        std::to_string(i + 1) + ")");
        }
        if (std::abs(dt - period) > tol) {
            throw std::invalid_argument("sample spacing deviates from 1/rate at sample " +
                                        std::to_string(i + 1));
        }
    }
}

Transient Transient::from_currents(double rate_hz, const std::vector<double>& currents_a) {
    if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
        throw std::invalid_argument("sampling rate must be positive and finite");
    }
    std::vector<Sample> samples;
    samples.reserve(currents_a.size());
    for (std::size_t i = 0; i < currents_a.size(); ++i) {
        samples.push_back({static_cast<double>(i + 1) / rate_hz, currents_a[i]});
    }
    return Transient(rate_hz, std::move(samples));
}

std::vector<double> Transient::times() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const Sample& s : samples_) out.push_back(s.t_s);
    return out;
}

std::vector<double> Transient::currents() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const Sample& s : samples_) out.push_back(s.current_a);
    return out;
}

namespace {

bool grids_coincide(const Transient& a, const Transient& b, std::size_t n) {
    if (std::abs(a.rate_hz() - b.rate_hz()) > 1e-12 * a.rate_hz()) return false;
    for (std::size_t i = 0; i < n; ++i) {
        // Grids from the same rate are usually bit-identical; loaded files may
        // carry up to the file tolerance.
        if (std::abs(a[i].t_s - b[i].t_s) > kFileGridTolS) return false;
    }
    return true;
}

}  // namespace

bool same_grid(const Transient& a, const Transient& b) {
    return a.size() == b.size() && grids_coincide(a, b, a.size());
}

bool is_grid_prefix(const Transient& pulse, const Transient& baseline) {
    return pulse.size() <= baseline.size() && grids_coincide(pulse, baseline, pulse.size());
}

Transient truncate(const Transient& tr, double window_s) {
    if (!(window_s > 0.0)) {
        throw std::invalid_argument("truncation window must be positive");
    }
    std::vector<Sample> kept;
    for (const Sample& s : tr.samples()) {
        if (s.t_s <= window_s + kWindowTolS) {
            kept.push_back(s);
        } else {
            break;
        }
    }
    if (kept.empty()) {
        throw std::invalid_argument("truncation window is shorter than one sample period");
    }
    return Transient(tr.rate_hz(), std::move(kept), kFileGridTolS);
}

}  // namespace chronopulse
