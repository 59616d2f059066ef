#include "chronopulse/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chronopulse/errors.hpp"
#include "chronopulse/noise.hpp"

namespace chronopulse {

namespace {

constexpr double kAmpsToNano = 1e9;
constexpr double kR2TieTol = 1e-9;

// Seed-derivation stream tags: 0 is the baseline, window i uses 1 + i.
constexpr std::uint64_t kBaselineStream = 0;

struct MeanSigma {
    double mu = 0.0;
    double sigma = 0.0;
};

MeanSigma population_stats(const std::vector<double>& values) {
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mu = sum / n;
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mu;
        ss += d * d;
    }
    return {mu, std::sqrt(ss / n)};
}

}  // namespace

CellParams default_cell() {
    CellParams cell;
    cell.n_e = 1;
    cell.faraday = kFaradayCPerMol;
    cell.area_cm2 = 2.25;
    cell.conc_mol_per_cm3 = 1e-9;
    cell.diff_cm2_per_s = 1e-6;
    return cell;
}

void ExperimentConfig::validate() const {
    cell.validate();
    correction.validate();
    if (environment) environment->validate();
    if (!(duration_s > 0.0)) throw ConfigError("duration_s must be positive");
    if (windows_s.empty()) throw ConfigError("windows_s must not be empty");
    for (double w : windows_s) {
        if (!(w > 0.0)) throw ConfigError("every window must be positive");
        if (w > duration_s) throw ConfigError("every window must be <= duration_s");
    }
    if (rates_hz.empty()) throw ConfigError("rates_hz must not be empty");
    for (double r : rates_hz) {
        if (!(r > 0.0)) throw ConfigError("every sampling rate must be positive");
    }
    if (repeats < 1) throw ConfigError("repeats must be >= 1");
    if (noise_sigma_a && !(*noise_sigma_a >= 0.0)) {
        throw ConfigError("noise sigma must be >= 0");
    }
}

double ExperimentConfig::effective_sigma_a() const {
    if (noise_sigma_a) return *noise_sigma_a;
    return 0.01 * reduced_tdc_constant(cell);
}

Transient average_sequences(const std::vector<Transient>& seqs) {
    if (seqs.empty()) {
        throw std::invalid_argument("cannot average zero sequences");
    }
    const Transient& first = seqs.front();
    for (const Transient& tr : seqs) {
        if (!same_grid(first, tr)) {
            throw GridMismatchError("sequences to average do not share a grid");
        }
    }
    const auto count = static_cast<double>(seqs.size());
    std::vector<Sample> out(first.samples());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double sum = 0.0;
        for (const Transient& tr : seqs) sum += tr[i].current_a;
        out[i].current_a = sum / count;
    }
    return Transient(first.rate_hz(), std::move(out), kFileGridTolS);
}

VariabilityStats variability_stats(const std::vector<WindowResult>& results,
                                   const Transient& baseline) {
    if (results.empty()) {
        throw std::invalid_argument("variability statistics need at least one window result");
    }
    std::vector<double> pooled_dev_a;
    std::vector<double> deltas_na;
    std::vector<double> r2s;
    for (const WindowResult& wr : results) {
        if (!same_grid(wr.inferred, baseline)) {
            throw GridMismatchError("window result does not share the baseline grid");
        }
        for (std::size_t i = 0; i < baseline.size(); ++i) {
            pooled_dev_a.push_back(std::abs(wr.inferred[i].current_a - baseline[i].current_a));
        }
        deltas_na.push_back(wr.tdc_delta_na);
        r2s.push_back(wr.r2_vs_baseline);
    }
    const MeanSigma pooled = population_stats(pooled_dev_a);
    const MeanSigma delta = population_stats(deltas_na);

    VariabilityStats stats;
    stats.inter_seq_mu_na = pooled.mu * kAmpsToNano;
    stats.inter_seq_sigma_na = pooled.sigma * kAmpsToNano;
    stats.delta_mu_na = delta.mu;
    stats.delta_sigma_na = delta.sigma;
    double r2_sum = 0.0;
    for (double r : r2s) r2_sum += r;
    stats.avg_r2 = r2_sum / static_cast<double>(r2s.size());
    return stats;
}

std::size_t select_best_window_index(const std::vector<WindowResult>& results) {
    if (results.empty()) {
        throw std::invalid_argument("cannot select a best window from zero results");
    }
    double best_r2 = results.front().r2_vs_baseline;
    for (const WindowResult& wr : results) {
        best_r2 = std::max(best_r2, wr.r2_vs_baseline);
    }
    // Among the r2 ties, smallest delta wins, then the shortest window.
    std::size_t best = results.size();
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].r2_vs_baseline < best_r2 - kR2TieTol) continue;
        if (best == results.size()) {
            best = i;
            continue;
        }
        const WindowResult& cur = results[i];
        const WindowResult& win = results[best];
        if (cur.tdc_delta_na < win.tdc_delta_na ||
            (cur.tdc_delta_na == win.tdc_delta_na && cur.window_s < win.window_s)) {
            best = i;
        }
    }
    return best;
}

const WindowResult& select_best_window(const std::vector<WindowResult>& results) {
    return results[select_best_window_index(results)];
}

namespace {

struct CellOutcome {
    FitReport fit;
    Transient inferred;
    double r2 = 0.0;
    double delta_na = 0.0;
};

CellOutcome run_cell(const ExperimentConfig& cfg, const Transient& baseline, double rate_hz,
                     double window_s, std::size_t rate_index, std::size_t window_index,
                     double sigma_a) {
    std::vector<Transient> pulses;
    pulses.reserve(static_cast<std::size_t>(cfg.repeats));
    for (int k = 0; k < cfg.repeats; ++k) {
        const std::uint64_t seed = derive_seed(cfg.seed, rate_index, 1 + window_index,
                                               static_cast<std::uint64_t>(k));
        Transient tr = simulate_transient(cfg.cell, window_s, rate_hz, {sigma_a, seed});
        if (cfg.environment && cfg.correction_apply == CorrectionApply::kPerSample) {
            tr = correct_transient(tr, *cfg.environment, cfg.correction);
        }
        pulses.push_back(std::move(tr));
    }
    Transient pulse = average_sequences(pulses);

    FitReport fit;
    if (cfg.aggregation == FitAggregation::kAverageThenFit) {
        fit = fit_pulse(pulse, baseline, cfg.basis);
    } else {
        // Fit each repeat, then average the coefficients; diagnostics are
        // recomputed for the averaged model against the averaged pulse.
        double u_sum = 0.0, v_sum = 0.0;
        for (const Transient& tr : pulses) {
            const FitReport r = fit_pulse(tr, baseline, cfg.basis);
            u_sum += r.model.u_a;
            v_sum += r.model.v;
        }
        const auto count = static_cast<double>(pulses.size());
        fit.model = {u_sum / count, v_sum / count, cfg.basis};
        fit.n_points = pulse.size();
        const std::vector<double> preds = [&] {
            std::vector<double> out(pulse.size());
            for (std::size_t i = 0; i < pulse.size(); ++i) {
                const double b = cfg.basis == FitBasis::kTime ? pulse[i].t_s
                                                              : baseline[i].current_a;
                out[i] = predict(fit.model, b);
            }
            return out;
        }();
        double y_sum = 0.0;
        for (const Sample& s : pulse.samples()) y_sum += s.current_a;
        const double y_mean = y_sum / static_cast<double>(pulse.size());
        for (std::size_t i = 0; i < pulse.size(); ++i) {
            const double dr = pulse[i].current_a - preds[i];
            const double dt = pulse[i].current_a - y_mean;
            fit.residual_ss += dr * dr;
            fit.total_ss += dt * dt;
        }
        fit.r_squared = fit.total_ss > 0.0 ? 1.0 - fit.residual_ss / fit.total_ss : 1.0;
    }

    // Extend to the baseline grid. A pulse that already covers it is used
    // as-is; a value-mapping model predicts from the baseline values that are
    // in hand here (standalone extrapolation stays time-basis only).
    Transient inferred = [&]() -> Transient {
        if (pulse.size() >= baseline.size()) return pulse;
        if (cfg.basis == FitBasis::kTime) {
            return infer_full_sequence(fit.model, pulse, cfg.duration_s);
        }
        std::vector<Sample> samples(pulse.samples());
        samples.reserve(baseline.size());
        for (std::size_t i = pulse.size(); i < baseline.size(); ++i) {
            samples.push_back({baseline[i].t_s, predict(fit.model, baseline[i].current_a)});
        }
        return Transient(pulse.rate_hz(), std::move(samples), kFileGridTolS);
    }();

    // Correlation to the baseline over the measured region; extrapolation
    // quality is captured separately by the terminal delta.
    const Transient measured_baseline = truncate(baseline, pulse.end_s());
    const double r2 = r_squared_vs(measured_baseline, pulse);

    double tdc_inferred = inferred.tdc_a();
    double tdc_baseline = baseline.tdc_a();
    if (cfg.environment && cfg.correction_apply == CorrectionApply::kFinalTdc) {
        tdc_inferred = correct(tdc_inferred, *cfg.environment, cfg.correction);
        tdc_baseline = correct(tdc_baseline, *cfg.environment, cfg.correction);
    }
    const double delta_na = std::abs(tdc_inferred - tdc_baseline) * kAmpsToNano;

    return {std::move(fit), std::move(inferred), r2, delta_na};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const double sigma_a = cfg.effective_sigma_a();

    ExperimentResult result;
    result.rates.reserve(cfg.rates_hz.size());

    for (std::size_t ri = 0; ri < cfg.rates_hz.size(); ++ri) {
        const double rate = cfg.rates_hz[ri];

        std::vector<Transient> repeats;
        repeats.reserve(static_cast<std::size_t>(cfg.repeats));
        for (int k = 0; k < cfg.repeats; ++k) {
            const std::uint64_t seed =
                derive_seed(cfg.seed, ri, kBaselineStream, static_cast<std::uint64_t>(k));
            Transient tr = simulate_transient(cfg.cell, cfg.duration_s, rate, {sigma_a, seed});
            if (cfg.environment && cfg.correction_apply == CorrectionApply::kPerSample) {
                tr = correct_transient(tr, *cfg.environment, cfg.correction);
            }
            repeats.push_back(std::move(tr));
        }

        RateResult rr{rate, average_sequences(repeats), {}, {}, {}, {}};

        for (std::size_t wi = 0; wi < cfg.windows_s.size(); ++wi) {
            const double window = cfg.windows_s[wi];
            try {
                CellOutcome cell = run_cell(cfg, rr.baseline, rate, window, ri, wi, sigma_a);
                rr.windows.push_back({rate, window, std::move(cell.fit), std::move(cell.inferred),
                                      cell.r2, cell.delta_na});
            } catch (const std::exception& e) {
                rr.failures.push_back({window, e.what()});
            }
        }

        if (!rr.windows.empty()) {
            rr.stats = variability_stats(rr.windows, rr.baseline);
            rr.best_window = select_best_window_index(rr.windows);
        }
        result.rates.push_back(std::move(rr));
    }

    // Overall best across rates, same ordering as the per-rate selection.
    std::vector<WindowResult> all;
    std::vector<std::pair<std::size_t, std::size_t>> origin;
    for (std::size_t ri = 0; ri < result.rates.size(); ++ri) {
        for (std::size_t wi = 0; wi < result.rates[ri].windows.size(); ++wi) {
            all.push_back(result.rates[ri].windows[wi]);
            origin.emplace_back(ri, wi);
        }
    }
    if (!all.empty()) {
        result.best = origin[select_best_window_index(all)];
    }
    return result;
}

}  // namespace chronopulse
