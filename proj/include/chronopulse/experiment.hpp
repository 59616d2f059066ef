#ifndef CHRONOPULSE_EXPERIMENT_HPP
#define CHRONOPULSE_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chronopulse/correction.hpp"
#include "chronopulse/cottrell.hpp"
#include "chronopulse/regression.hpp"
#include "chronopulse/transient.hpp"

namespace chronopulse {

/// Whether the repeats of a grid cell are averaged before fitting (the
/// measurement protocol) or fitted individually with coefficients averaged
/// afterwards (sensitivity analysis).
enum class FitAggregation {
    kAverageThenFit,
    kFitThenAverage,
};

/// Where the environment correction is applied when enabled: to every raw
/// sample before fitting, or only to the terminal diffusion currents that
/// feed the reported deltas.
enum class CorrectionApply {
    kPerSample,
    kFinalTdc,
};

/// Default cell: single-electron analyte on a 2.25 cm^2 planar electrode at
/// trace concentration. Yields currents around 1e-7 A over a 6 s decay.
CellParams default_cell();

/// Full description of one measurement-grid experiment.
struct ExperimentConfig {
    double duration_s = 6.0;
    std::vector<double> windows_s = {0.3, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> rates_hz = {10.0, 100.0};
    int repeats = 5;
    /// Noise level in amperes; unset means 1% of the 1.5 s model current.
    std::optional<double> noise_sigma_a;
    std::uint64_t seed = 42;
    CellParams cell = default_cell();
    CorrectionCoeffs correction;
    /// Environment reading; correction is applied only when present.
    std::optional<EnvironmentReading> environment;
    CorrectionApply correction_apply = CorrectionApply::kPerSample;
    FitBasis basis = FitBasis::kTime;
    FitAggregation aggregation = FitAggregation::kAverageThenFit;

    void validate() const;
    double effective_sigma_a() const;
};

/// Aggregate deviation statistics of the inferred sequences of one sampling
/// rate against its baseline. Currents in nanoamperes.
struct VariabilityStats {
    double inter_seq_mu_na = 0.0;     ///< mean pooled per-sample |inferred - baseline|
    double inter_seq_sigma_na = 0.0;  ///< population sigma of the same pool
    double delta_mu_na = 0.0;         ///< mean per-window |terminal TDC delta|
    double delta_sigma_na = 0.0;      ///< population sigma of the deltas
    double avg_r2 = 0.0;              ///< mean per-window r2 vs baseline
};

/// Outcome of one (rate, window) grid cell.
struct WindowResult {
    double rate_hz = 0.0;
    double window_s = 0.0;
    FitReport fit;
    Transient inferred;          ///< measured pulse extended to the baseline grid
    double r2_vs_baseline = 0.0; ///< computed over the measured window
    double tdc_delta_na = 0.0;   ///< |inferred TDC - baseline TDC| at the final grid point
};

struct WindowFailure {
    double window_s = 0.0;
    std::string message;
};

struct RateResult {
    double rate_hz = 0.0;
    Transient baseline;
    std::vector<WindowResult> windows;
    std::vector<WindowFailure> failures;
    std::optional<VariabilityStats> stats;
    std::optional<std::size_t> best_window;  ///< index into windows
};

struct ExperimentResult {
    std::vector<RateResult> rates;
    /// (rate index, window index) of the overall best cell.
    std::optional<std::pair<std::size_t, std::size_t>> best;
};

/// Pointwise arithmetic mean of sequences sharing one grid.
Transient average_sequences(const std::vector<Transient>& seqs);

/// Pools per-sample absolute deviations of every inferred sequence from the
/// baseline (one mu/sigma pair per rate), terminal-TDC deltas, and the mean
/// r2. Population sigma throughout, so a single window is well-defined.
VariabilityStats variability_stats(const std::vector<WindowResult>& results,
                                   const Transient& baseline);

/// Lexicographic selection: maximize r2_vs_baseline; r2 ties within 1e-9 are
/// broken by the smallest tdc_delta_na, remaining ties by the smallest
/// window. Invariant under permutation of the input.
const WindowResult& select_best_window(const std::vector<WindowResult>& results);
std::size_t select_best_window_index(const std::vector<WindowResult>& results);

/// Runs the full measurement grid: per rate, `repeats` baseline sequences are
/// simulated and averaged; per window, `repeats` fresh pulse measurements are
/// simulated, aggregated, fitted and extended to the full duration. A failing
/// cell is recorded per-cell and does not abort the grid. Deterministic for a
/// fixed config (including seed).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace chronopulse

#endif
