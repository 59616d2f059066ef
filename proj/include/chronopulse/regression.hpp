#ifndef CHRONOPULSE_REGRESSION_HPP
#define CHRONOPULSE_REGRESSION_HPP

#include <cstddef>
#include <span>

#include "chronopulse/transient.hpp"

namespace chronopulse {

/// What the reciprocal predictor of the inverse-regression model refers to.
///
/// kTime: predict current from 1/t. A pulse fitted this way is a
/// self-contained extrapolator for later times.
///
/// kValueMapping: predict a pulse value from the reciprocal of the baseline
/// value at the same grid point. Faithful to the model's original wording but
/// needs baseline values to predict, so it cannot extrapolate on its own.
enum class FitBasis {
    kTime,
    kValueMapping,
};

/// The inverse-regression model k = u + v / b.
struct RegressionModel {
    double u_a = 0.0;   ///< bias, amperes
    double v = 0.0;     ///< gradient: ampere-seconds (kTime) or ampere^2 (kValueMapping)
    FitBasis basis = FitBasis::kTime;
};

/// A fitted model plus goodness-of-fit diagnostics.
struct FitReport {
    RegressionModel model;
    double r_squared = 0.0;      ///< 1 - residual_ss/total_ss against the fitted responses
    std::size_t n_points = 0;
    double residual_ss = 0.0;    ///< A^2
    double total_ss = 0.0;       ///< A^2
};

/// Least-squares fit of k = u + v / b over (xs, ys), closed form on the
/// transformed predictor z = 1/b. No iterative optimizer is involved.
///
/// Throws std::invalid_argument (< 2 points or length mismatch),
/// std::domain_error (some b = 0) or SingularDesignError (all b identical).
FitReport fit_inverse(std::span<const double> xs, std::span<const double> ys,
                      FitBasis basis = FitBasis::kTime);

/// Evaluates u + v / b. Throws std::domain_error for b = 0.
double predict(const RegressionModel& model, double b);

/// Fits a measurement pulse against its baseline.
///
/// kTime fits current against 1/t over the pulse samples; kValueMapping fits
/// pulse values against reciprocal baseline values at the shared grid points.
/// The pulse grid must be a prefix of the baseline grid.
FitReport fit_pulse(const Transient& pulse, const Transient& baseline, FitBasis basis);

/// Standalone time-basis fit of a pulse (no baseline required).
FitReport fit_pulse(const Transient& pulse);

/// Extends a pulse to `duration_s` on its own grid: samples inside the pulse
/// window keep their measured values, samples beyond are predict(model, t_i).
///
/// Requires a kTime model; a kValueMapping model cannot extrapolate because
/// the baseline values it predicts from do not exist at inference time.
Transient infer_full_sequence(const RegressionModel& model, const Transient& pulse,
                              double duration_s);

/// Coefficient of determination of `candidate` against `reference`:
///   1 - sum((ref - cand)^2) / sum((ref - mean(ref))^2).
/// Exactly 1 for identical sequences; may be negative for fits worse than
/// the mean. Throws GridMismatchError for different grids and
/// std::domain_error when the reference has zero variance but the sequences
/// differ.
double r_squared_vs(const Transient& reference, const Transient& candidate);

}  // namespace chronopulse

#endif
