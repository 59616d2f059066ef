#include "chronopulse/report.hpp"

#include <fstream>

#include "chronopulse/config.hpp"
#include "chronopulse/errors.hpp"
#include "chronopulse/version.hpp"

namespace chronopulse {

namespace {

constexpr double kAmpsToNano = 1e9;

Json fit_json(const FitReport& fit) {
    return Json{
        {"u_a", fit.model.u_a},
        {"v", fit.model.v},
        {"basis", to_string(fit.model.basis)},
        {"r_squared", fit.r_squared},
        {"n_points", fit.n_points},
        {"residual_ss", fit.residual_ss},
        {"total_ss", fit.total_ss},
    };
}

Json stats_json(const VariabilityStats& s) {
    return Json{
        {"inter_seq_mu_na", s.inter_seq_mu_na},
        {"inter_seq_sigma_na", s.inter_seq_sigma_na},
        {"delta_mu_na", s.delta_mu_na},
        {"delta_sigma_na", s.delta_sigma_na},
        {"avg_r2", s.avg_r2},
        {"inter_seq_mu_a", s.inter_seq_mu_na / kAmpsToNano},
        {"inter_seq_sigma_a", s.inter_seq_sigma_na / kAmpsToNano},
        {"delta_mu_a", s.delta_mu_na / kAmpsToNano},
        {"delta_sigma_a", s.delta_sigma_na / kAmpsToNano},
    };
}

Json config_json(const ExperimentConfig& cfg) {
    Json correction{
        {"enabled", cfg.environment.has_value()},
        {"apply", to_string(cfg.correction_apply)},
        {"parse", to_string(cfg.correction.parse)},
        {"temp_gain", cfg.correction.temp_gain},
        {"temp_scale", cfg.correction.temp_scale},
        {"temp_exp", cfg.correction.temp_exp},
        {"rh_gain", cfg.correction.rh_gain},
        {"rh_scale", cfg.correction.rh_scale},
        {"rh_exp", cfg.correction.rh_exp},
    };
    if (cfg.environment) {
        correction["env"] = Json{{"temp_c", cfg.environment->temp_c},
                                 {"rh_pct", cfg.environment->rh_pct}};
    } else {
        correction["env"] = nullptr;
    }
    return Json{
        {"duration_s", cfg.duration_s},
        {"windows_s", cfg.windows_s},
        {"rates_hz", cfg.rates_hz},
        {"repeats", cfg.repeats},
        {"noise", Json{{"sigma_a", cfg.effective_sigma_a()}, {"seed", cfg.seed}}},
        {"cell",
         Json{{"n_e", cfg.cell.n_e},
              {"faraday_c_per_mol", cfg.cell.faraday},
              {"area_cm2", cfg.cell.area_cm2},
              {"conc_mol_per_cm3", cfg.cell.conc_mol_per_cm3},
              {"diff_cm2_per_s", cfg.cell.diff_cm2_per_s}}},
        {"basis", to_string(cfg.basis)},
        {"aggregation", to_string(cfg.aggregation)},
        {"correction", std::move(correction)},
    };
}

}  // namespace

Json build_report(const ExperimentConfig& cfg, const ExperimentResult& result) {
    Json rates = Json::array();
    for (const RateResult& rr : result.rates) {
        Json windows = Json::array();
        for (const WindowResult& wr : rr.windows) {
            windows.push_back(Json{
                {"window_s", wr.window_s},
                {"fit", fit_json(wr.fit)},
                {"r2_vs_baseline", wr.r2_vs_baseline},
                {"inferred_tdc_a", wr.inferred.tdc_a()},
                {"inferred_tdc_na", wr.inferred.tdc_a() * kAmpsToNano},
                {"tdc_delta_na", wr.tdc_delta_na},
            });
        }
        Json failures = Json::array();
        for (const WindowFailure& wf : rr.failures) {
            failures.push_back(Json{{"window_s", wf.window_s}, {"error", wf.message}});
        }
        Json entry{
            {"rate_hz", rr.rate_hz},
            {"baseline_tdc_a", rr.baseline.tdc_a()},
            {"baseline_tdc_na", rr.baseline.tdc_a() * kAmpsToNano},
            {"windows", std::move(windows)},
            {"failures", std::move(failures)},
        };
        entry["stats"] = rr.stats ? stats_json(*rr.stats) : Json(nullptr);
        entry["best_window_s"] =
            rr.best_window ? Json(rr.windows[*rr.best_window].window_s) : Json(nullptr);
        rates.push_back(std::move(entry));
    }

    Json report{
        {"tool", Json{{"name", kToolName}, {"version", kToolVersion}}},
        {"config", config_json(cfg)},
        // Physical-protocol metadata: the idle interval between measurements
        // is part of the bench procedure but is not simulated.
        {"protocol", Json{{"relaxation_period_s", 300.0}, {"relaxation_simulated", false}}},
        {"rates", std::move(rates)},
    };
    if (result.best) {
        const auto& [ri, wi] = *result.best;
        report["best"] = Json{{"rate_hz", result.rates[ri].rate_hz},
                              {"window_s", result.rates[ri].windows[wi].window_s}};
    } else {
        report["best"] = nullptr;
    }
    return report;
}

std::string report_text(const Json& report) {
    return report.dump(2) + "\n";
}

void write_report(const std::filesystem::path& path, const Json& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write '" + path.string() + "'");
    }
    out << report_text(report);
}

}  // namespace chronopulse
