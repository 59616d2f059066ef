#include "chronopulse/regression.hpp"

#include <cmath>
#include <stdexcept>

#include "chronopulse/errors.hpp"

namespace chronopulse {

FitReport fit_inverse(std::span<const double> xs, std::span<const double> ys, FitBasis basis) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("predictor and response lengths differ");
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("inverse regression needs at least 2 points");
    }
    const std::size_t n = xs.size();

    std::vector<double> zs(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (xs[i] == 0.0) {
            throw std::domain_error("inverse regression predictor must be nonzero");
        }
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            throw std::domain_error("inverse regression inputs must be finite");
        }
        zs[i] = 1.0 / xs[i];
    }

    // Two-pass centered sums.
    double z_sum = 0.0, y_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        z_sum += zs[i];
        y_sum += ys[i];
    }
    const double z_mean = z_sum / static_cast<double>(n);
    const double y_mean = y_sum / static_cast<double>(n);

    double szz = 0.0, szy = 0.0, total_ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dz = zs[i] - z_mean;
        const double dy = ys[i] - y_mean;
        szz += dz * dz;
        szy += dz * dy;
        total_ss += dy * dy;
    }
    if (szz == 0.0) {
        throw SingularDesignError("all predictor values are identical");
    }

    const double v = szy / szz;
    const double u = y_mean - v * z_mean;

    double residual_ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (u + v * zs[i]);
        residual_ss += r * r;
    }

    FitReport report;
    report.model = {u, v, basis};
    report.n_points = n;
    report.residual_ss = residual_ss;
    report.total_ss = total_ss;
    report.r_squared = total_ss > 0.0 ? 1.0 - residual_ss / total_ss : 1.0;
    return report;
}

double predict(const RegressionModel& model, double b) {
    if (b == 0.0) {
        throw std::domain_error("inverse regression prediction is undefined at b = 0");
    }
    return model.u_a + model.v / b;
}

FitReport fit_pulse(const Transient& pulse, const Transient& baseline, FitBasis basis) {
    if (!is_grid_prefix(pulse, baseline)) {
        throw GridMismatchError("pulse grid is not a prefix of the baseline grid");
    }
    if (basis == FitBasis::kTime) {
        return fit_inverse(pulse.times(), pulse.currents(), FitBasis::kTime);
    }
    std::vector<double> baseline_values(pulse.size());
    for (std::size_t i = 0; i < pulse.size(); ++i) {
        baseline_values[i] = baseline[i].current_a;
    }
    return fit_inverse(baseline_values, pulse.currents(), FitBasis::kValueMapping);
}

FitReport fit_pulse(const Transient& pulse) {
    return fit_inverse(pulse.times(), pulse.currents(), FitBasis::kTime);
}

Transient infer_full_sequence(const RegressionModel& model, const Transient& pulse,
                              double duration_s) {
    if (model.basis != FitBasis::kTime) {
        throw std::invalid_argument(
            "a value-mapping model cannot extrapolate: baseline values are not "
            "available at inference time");
    }
    const double rate = pulse.rate_hz();
    const auto n_total = static_cast<std::size_t>(std::floor(duration_s * rate + 1e-9));
    if (n_total <= pulse.size()) {
        throw std::invalid_argument("target duration does not extend beyond the pulse");
    }
    std::vector<Sample> samples(pulse.samples());
    samples.reserve(n_total);
    for (std::size_t i = pulse.size() + 1; i <= n_total; ++i) {
        const double t = static_cast<double>(i) / rate;
        samples.push_back({t, predict(model, t)});
    }
    return Transient(rate, std::move(samples), kFileGridTolS);
}

double r_squared_vs(const Transient& reference, const Transient& candidate) {
    if (!same_grid(reference, candidate)) {
        throw GridMismatchError("sequences do not share a sample grid");
    }
    const std::size_t n = reference.size();
    double sum = 0.0;
    for (const Sample& s : reference.samples()) sum += s.current_a;
    const double mean = sum / static_cast<double>(n);

    double total_ss = 0.0, residual_ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = reference[i].current_a - mean;
        const double dr = reference[i].current_a - candidate[i].current_a;
        total_ss += dt * dt;
        residual_ss += dr * dr;
    }
    if (residual_ss == 0.0) return 1.0;  // covers identical sequences exactly
    if (total_ss == 0.0) {
        throw std::domain_error("reference sequence has zero variance but the candidate differs");
    }
    return 1.0 - residual_ss / total_ss;
}

}  // namespace chronopulse
