#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "chronopulse/errors.hpp"
#include "chronopulse/experiment.hpp"
#include "oracles.hpp"

using namespace chronopulse;

namespace {

double rel_dev(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

WindowResult make_result(const Transient& baseline, std::vector<double> inferred_na,
                         double window_s) {
    std::vector<double> amps;
    for (double na : inferred_na) amps.push_back(na * 1e-9);
    Transient inferred = Transient::from_currents(baseline.rate_hz(), amps);
    const double r2 = r_squared_vs(baseline, inferred);
    const double delta = std::abs(inferred.tdc_a() - baseline.tdc_a()) * 1e9;
    return {baseline.rate_hz(), window_s, FitReport{}, std::move(inferred), r2, delta};
}

}  // namespace

TEST_CASE("averaging sequences is the pointwise mean") {
    const Transient a = Transient::from_currents(10.0, {1.0, 2.0});
    const Transient b = Transient::from_currents(10.0, {3.0, 4.0});
    const Transient avg = average_sequences({a, b});
    CHECK(avg[0].current_a == 2.0);
    CHECK(avg[1].current_a == 3.0);

    SUBCASE("five identical sequences average to themselves") {
        const Transient avg5 = average_sequences({a, a, a, a, a});
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(avg5[i].current_a == a[i].current_a);
        }
    }
    SUBCASE("a single sequence averages to itself") {
        const Transient avg1 = average_sequences({b});
        for (std::size_t i = 0; i < b.size(); ++i) {
            CHECK(avg1[i].current_a == b[i].current_a);
        }
    }
    SUBCASE("grid mismatch is rejected") {
        const Transient c = Transient::from_currents(20.0, {1.0, 2.0});
        CHECK_THROWS_AS(average_sequences({a, c}), GridMismatchError);
        CHECK_THROWS_AS(average_sequences({}), std::invalid_argument);
    }
}

TEST_CASE("variability stats match a hand-enumerated toy instance") {
    // Baseline 10, 8, 6 nA; two inferred sequences with known deviations.
    const Transient baseline = Transient::from_currents(1.0, {10e-9, 8e-9, 6e-9});
    std::vector<WindowResult> results;
    results.push_back(make_result(baseline, {11.0, 7.0, 9.0}, 1.0));
    results.push_back(make_result(baseline, {10.0, 8.0, 2.0}, 2.0));

    // Pooled |deviations| in nA: 1, 1, 3, 0, 0, 4 -> mu 1.5, population sigma 1.5.
    // Deltas: 3, 4 -> mu 3.5, sigma 0.5.
    // r2: 1 - 11/8 = -0.375 and 1 - 16/8 = -1 -> average -0.6875.
    const VariabilityStats stats = variability_stats(results, baseline);
    CHECK(rel_dev(stats.inter_seq_mu_na, 1.5) < 1e-12);
    CHECK(rel_dev(stats.inter_seq_sigma_na, 1.5) < 1e-12);
    CHECK(rel_dev(stats.delta_mu_na, 3.5) < 1e-12);
    CHECK(rel_dev(stats.delta_sigma_na, 0.5) < 1e-12);
    CHECK(rel_dev(stats.avg_r2, -0.6875) < 1e-12);
}

TEST_CASE("variability stats of identical sequences are exactly (0, 0, 0, 0, 1)") {
    const Transient baseline = Transient::from_currents(10.0, {5e-8, 4e-8, 3e-8, 2e-8});
    std::vector<WindowResult> results;
    for (double w : {0.1, 0.2, 0.3}) {
        results.push_back({10.0, w, FitReport{}, baseline, r_squared_vs(baseline, baseline), 0.0});
    }
    const VariabilityStats stats = variability_stats(results, baseline);
    CHECK(stats.inter_seq_mu_na == 0.0);
    CHECK(stats.inter_seq_sigma_na == 0.0);
    CHECK(stats.delta_mu_na == 0.0);
    CHECK(stats.delta_sigma_na == 0.0);
    CHECK(stats.avg_r2 == 1.0);
}

TEST_CASE("variability stats of a singleton") {
    const Transient baseline = Transient::from_currents(1.0, {1e-8, 2e-8});
    std::vector<WindowResult> results;
    results.push_back(make_result(baseline, {12.0, 18.0}, 1.0));
    const VariabilityStats stats = variability_stats(results, baseline);
    // The pooled deviations are ~2 nA each but differ in their last bits.
    CHECK(stats.inter_seq_sigma_na <= 1e-12);
    CHECK(stats.delta_sigma_na == 0.0);  // population sigma of one delta
    CHECK(stats.avg_r2 == results[0].r2_vs_baseline);

    CHECK_THROWS_AS(variability_stats({}, baseline), std::invalid_argument);
}

TEST_CASE("best-window selection is lexicographic with an r2 tie tolerance") {
    const Transient baseline = Transient::from_currents(1.0, {10e-9, 8e-9, 6e-9});

    SUBCASE("single candidate returns itself") {
        std::vector<WindowResult> one;
        one.push_back(make_result(baseline, {10.0, 8.0, 5.0}, 0.3));
        CHECK(select_best_window(one).window_s == 0.3);
    }

    SUBCASE("equal r2 breaks ties on the smaller delta") {
        std::vector<WindowResult> results;
        results.push_back(make_result(baseline, {10.0, 8.0, 6.0}, 1.0));
        results.push_back(make_result(baseline, {10.0, 8.0, 6.0}, 2.0));
        results[0].tdc_delta_na = 5.0;
        results[1].tdc_delta_na = 3.0;
        CHECK(select_best_window(results).window_s == 2.0);
        std::swap(results[0], results[1]);
        CHECK(select_best_window(results).window_s == 2.0);
    }

    SUBCASE("r2 within 1e-9 counts as a tie, outside does not") {
        std::vector<WindowResult> results;
        results.push_back(make_result(baseline, {10.0, 8.0, 6.0}, 1.0));
        results.push_back(make_result(baseline, {10.0, 8.0, 6.0}, 2.0));
        results[0].r2_vs_baseline = 0.95;
        results[0].tdc_delta_na = 9.0;
        results[1].r2_vs_baseline = 0.95 - 5e-10;
        results[1].tdc_delta_na = 1.0;
        CHECK(select_best_window(results).window_s == 2.0);
        results[1].r2_vs_baseline = 0.94;
        CHECK(select_best_window(results).window_s == 1.0);
    }

    SUBCASE("full tie falls back to the shortest window") {
        std::vector<WindowResult> results;
        results.push_back(make_result(baseline, {10.0, 8.0, 6.0}, 3.0));
        results.push_back(make_result(baseline, {10.0, 8.0, 6.0}, 0.5));
        CHECK(select_best_window(results).window_s == 0.5);
    }

    SUBCASE("selection is invariant under permutation") {
        std::vector<WindowResult> results;
        results.push_back(make_result(baseline, {11.0, 7.0, 9.0}, 0.3));
        results.push_back(make_result(baseline, {10.0, 8.0, 2.0}, 0.5));
        results.push_back(make_result(baseline, {10.0, 7.5, 6.5}, 1.0));
        const double picked = select_best_window(results).window_s;
        std::mt19937_64 rng(3);
        for (int i = 0; i < 10; ++i) {
            std::shuffle(results.begin(), results.end(), rng);
            CHECK(select_best_window(results).window_s == picked);
        }
    }

    SUBCASE("appending an exact baseline copy improves the aggregate") {
        std::vector<WindowResult> results;
        results.push_back(make_result(baseline, {11.0, 7.0, 9.0}, 0.3));
        results.push_back(make_result(baseline, {10.0, 8.0, 2.0}, 0.5));
        const VariabilityStats before = variability_stats(results, baseline);
        const double best_delta_before = select_best_window(results).tdc_delta_na;

        results.push_back(make_result(baseline, {10.0, 8.0, 6.0}, 6.0));
        const VariabilityStats after = variability_stats(results, baseline);
        CHECK(after.avg_r2 > before.avg_r2);
        CHECK(select_best_window(results).tdc_delta_na <= best_delta_before);
    }
}

TEST_CASE("experiment config validation") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    SUBCASE("window beyond the duration") {
        cfg.windows_s = {0.3, 7.0};
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("window equal to the duration is allowed") {
        cfg.windows_s = {6.0};
        CHECK_NOTHROW(cfg.validate());
    }
    SUBCASE("bad repeats") {
        cfg.repeats = 0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("empty lists") {
        cfg.windows_s.clear();
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("negative rate") {
        cfg.rates_hz = {-10.0};
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("negative sigma") {
        cfg.noise_sigma_a = -1.0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
}

TEST_CASE("default sigma is one percent of the 1.5 s model current") {
    const ExperimentConfig cfg;
    CHECK(cfg.effective_sigma_a() == 0.01 * reduced_tdc_constant(cfg.cell));
    ExperimentConfig overridden;
    overridden.noise_sigma_a = 5e-10;
    CHECK(overridden.effective_sigma_a() == 5e-10);
}

TEST_CASE("zero-noise experiment matches the composed pipeline oracle") {
    ExperimentConfig cfg;
    cfg.noise_sigma_a = 0.0;
    cfg.rates_hz = {100.0};
    cfg.windows_s = {0.3, 1.0, 3.0};
    cfg.repeats = 2;

    const ExperimentResult result = run_experiment(cfg);
    REQUIRE(result.rates.size() == 1);
    const RateResult& rr = result.rates[0];
    REQUIRE(rr.windows.size() == 3);
    CHECK(rr.failures.empty());

    const double baseline_tdc = rr.baseline.tdc_a();
    for (const WindowResult& wr : rr.windows) {
        // Deltas are strictly positive: the inverse law is not the model.
        CHECK(wr.tdc_delta_na > 0.0);

        // Composed oracle: noiseless pulse -> grid-search fit -> prediction at 6 s.
        const Transient pulse = simulate_transient(cfg.cell, wr.window_s, 100.0, {0.0, 0});
        const oracles::GridFit oracle =
            oracles::grid_search_inverse_fit(pulse.times(), pulse.currents());
        const double want_delta_na =
            std::abs((oracle.u + oracle.v / 6.0) - baseline_tdc) * 1e9;
        CHECK(rel_dev(wr.tdc_delta_na, want_delta_na) < 1e-6);

        // The measured region agrees exactly, so its r2 is exactly 1.
        CHECK(wr.r2_vs_baseline == 1.0);
    }

    // Noiseless full ties on r2 resolve to the smallest delta: longest window.
    CHECK(rr.best_window.has_value());
    CHECK(rr.windows[*rr.best_window].window_s == 3.0);
}

TEST_CASE("a window spanning the full duration keeps the measured sequence") {
    ExperimentConfig cfg;
    cfg.noise_sigma_a = 0.0;
    cfg.rates_hz = {10.0};
    cfg.windows_s = {6.0};
    cfg.repeats = 1;

    const ExperimentResult result = run_experiment(cfg);
    const RateResult& rr = result.rates[0];
    REQUIRE(rr.windows.size() == 1);
    const WindowResult& wr = rr.windows[0];
    CHECK(wr.r2_vs_baseline == 1.0);
    CHECK(wr.tdc_delta_na == 0.0);
    REQUIRE(same_grid(wr.inferred, rr.baseline));
    for (std::size_t i = 0; i < rr.baseline.size(); ++i) {
        CHECK(wr.inferred[i].current_a == rr.baseline[i].current_a);
    }
    // The fit itself cannot reach r2 = 1: the inverse law mismatches the model.
    CHECK(wr.fit.r_squared < 1.0);
}

TEST_CASE("default grid yields 14 window results and is deterministic") {
    const ExperimentConfig cfg;
    const ExperimentResult a = run_experiment(cfg);
    const ExperimentResult b = run_experiment(cfg);

    std::size_t total = 0;
    for (const RateResult& rr : a.rates) total += rr.windows.size();
    CHECK(total == 14);

    REQUIRE(a.rates.size() == b.rates.size());
    for (std::size_t ri = 0; ri < a.rates.size(); ++ri) {
        const RateResult& ra = a.rates[ri];
        const RateResult& rb = b.rates[ri];
        REQUIRE(ra.windows.size() == rb.windows.size());
        for (std::size_t wi = 0; wi < ra.windows.size(); ++wi) {
            CHECK(ra.windows[wi].fit.model.u_a == rb.windows[wi].fit.model.u_a);
            CHECK(ra.windows[wi].fit.model.v == rb.windows[wi].fit.model.v);
            CHECK(ra.windows[wi].r2_vs_baseline == rb.windows[wi].r2_vs_baseline);
            CHECK(ra.windows[wi].tdc_delta_na == rb.windows[wi].tdc_delta_na);
            for (std::size_t i = 0; i < ra.windows[wi].inferred.size(); ++i) {
                CHECK(ra.windows[wi].inferred[i].current_a ==
                      rb.windows[wi].inferred[i].current_a);
            }
        }
        REQUIRE(ra.stats.has_value());
        CHECK(ra.stats->avg_r2 == rb.stats->avg_r2);
        CHECK(ra.stats->inter_seq_mu_na == rb.stats->inter_seq_mu_na);
    }
}

TEST_CASE("value-mapping experiments predict from baseline values") {
    ExperimentConfig cfg;
    cfg.basis = FitBasis::kValueMapping;
    cfg.rates_hz = {10.0};
    cfg.windows_s = {1.0, 3.0};
    cfg.repeats = 2;

    const ExperimentResult result = run_experiment(cfg);
    const RateResult& rr = result.rates[0];
    CHECK(rr.failures.empty());
    REQUIRE(rr.windows.size() == 2);
    for (const WindowResult& wr : rr.windows) {
        CHECK(wr.fit.model.basis == FitBasis::kValueMapping);
        CHECK(same_grid(wr.inferred, rr.baseline));
        // Beyond the window, samples are predictions from the baseline values.
        const std::size_t n_pulse = static_cast<std::size_t>(wr.window_s * 10.0 + 0.5);
        for (std::size_t i = n_pulse; i < wr.inferred.size(); ++i) {
            const double want = predict(wr.fit.model, rr.baseline[i].current_a);
            CHECK(wr.inferred[i].current_a == want);
        }
    }
}

TEST_CASE("a failing grid cell is reported per-cell, not globally") {
    ExperimentConfig cfg;
    cfg.rates_hz = {10.0};
    // 0.05 s yields an empty grid, 0.1 s a single sample (unfittable); 1 s works.
    cfg.windows_s = {0.05, 0.1, 1.0};
    cfg.repeats = 2;

    const ExperimentResult result = run_experiment(cfg);
    const RateResult& rr = result.rates[0];
    REQUIRE(rr.windows.size() == 1);
    CHECK(rr.windows[0].window_s == 1.0);
    REQUIRE(rr.failures.size() == 2);
    CHECK(rr.failures[0].window_s == 0.05);
    CHECK(rr.failures[1].window_s == 0.1);
    CHECK(!rr.failures[0].message.empty());
    REQUIRE(rr.stats.has_value());
    CHECK(rr.stats->avg_r2 == rr.windows[0].r2_vs_baseline);
    REQUIRE(result.best.has_value());
}

TEST_CASE("per-sample environment correction flows through the experiment") {
    ExperimentConfig cfg;
    cfg.rates_hz = {10.0};
    cfg.windows_s = {1.0};
    cfg.repeats = 1;
    cfg.noise_sigma_a = 0.0;
    cfg.environment = EnvironmentReading{25.0, 50.0};

    const ExperimentResult result = run_experiment(cfg);
    const RateResult& rr = result.rates[0];
    // Baseline samples are corrected model values.
    const Transient raw = simulate_transient(cfg.cell, cfg.duration_s, 10.0, {0.0, 0});
    for (std::size_t i = 0; i < rr.baseline.size(); ++i) {
        CHECK(rr.baseline[i].current_a ==
              correct(raw[i].current_a, *cfg.environment, cfg.correction));
    }
}
