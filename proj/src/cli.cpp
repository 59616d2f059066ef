#include "chronopulse/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <utility>

#include <CLI11.hpp>

#include "chronopulse/config.hpp"
#include "chronopulse/cottrell.hpp"
#include "chronopulse/errors.hpp"
#include "chronopulse/experiment.hpp"
#include "chronopulse/numformat.hpp"
#include "chronopulse/regression.hpp"
#include "chronopulse/report.hpp"
#include "chronopulse/transient_io.hpp"
#include "chronopulse/version.hpp"

namespace chronopulse {

namespace {

namespace fs = std::filesystem;

FitBasis parse_basis(const std::string& text) {
    if (text == "time") return FitBasis::kTime;
    if (text == "value") return FitBasis::kValueMapping;
    throw std::invalid_argument("basis must be 'time' or 'value'");
}

/// Generic two-column ingestion for the fit subcommand: the usual file schema
/// but without the uniform-grid requirement, since an arbitrary (x, y) series
/// is a valid regression input.
std::pair<std::vector<double>, std::vector<double>> load_xy(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("time_s,current_a", 0) != 0) {
        throw ParseError(path.string() + ": line 1: unrecognized header '" + line + "'");
    }
    std::vector<double> xs, ys;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t c1 = line.find(',');
        if (c1 == std::string::npos) {
            throw ParseError(path.string() + ": line " + std::to_string(line_no) +
                             ": expected at least 2 fields");
        }
        std::size_t c2 = line.find(',', c1 + 1);
        if (c2 == std::string::npos) c2 = line.size();
        try {
            xs.push_back(parse_double(std::string_view(line).substr(0, c1)));
            ys.push_back(parse_double(std::string_view(line).substr(c1 + 1, c2 - c1 - 1)));
        } catch (const std::exception& e) {
            throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return {std::move(xs), std::move(ys)};
}

void print_fit(std::ostream& out, const FitReport& fit) {
    out << "n_points = " << fit.n_points << '\n'
        << "basis = " << to_string(fit.model.basis) << '\n'
        << "u_a = " << format_human(fit.model.u_a) << '\n'
        << "v = " << format_human(fit.model.v) << '\n'
        << "r_squared = " << format_human(fit.r_squared) << '\n'
        << "residual_ss = " << format_human(fit.residual_ss) << '\n'
        << "total_ss = " << format_human(fit.total_ss) << '\n';
}

void print_stats(std::ostream& out, const VariabilityStats& s) {
    out << "inter_seq_mu_na = " << format_human(s.inter_seq_mu_na) << '\n'
        << "inter_seq_sigma_na = " << format_human(s.inter_seq_sigma_na) << '\n'
        << "delta_mu_na = " << format_human(s.delta_mu_na) << '\n'
        << "delta_sigma_na = " << format_human(s.delta_sigma_na) << '\n'
        << "avg_r2 = " << format_human(s.avg_r2) << '\n';
}

ExperimentConfig resolve_config(const std::string& source) {
    if (source == "default") return ExperimentConfig{};
    return load_config(source);
}

struct SimulateArgs {
    double duration_s = 6.0;
    double rate_hz = 100.0;
    double sigma_a = 0.0;
    std::uint64_t seed = 42;
    CellParams cell = default_cell();
    std::string out_path;
};

struct CorrectArgs {
    std::string in_path;
    std::string out_path;
    std::string config;
    std::optional<double> temp_c;
    std::optional<double> rh_pct;
    std::string parse;
    std::optional<double> rate;
};

struct FitArgs {
    std::string in_path;
    std::string baseline_path;
    std::string basis = "time";
    std::optional<double> rate;
};

struct InferArgs {
    std::string in_path;
    std::string out_path;
    double duration_s = 6.0;
    std::string basis = "time";
    std::optional<double> rate;
};

struct StatsArgs {
    std::string baseline_path;
    std::vector<std::string> inferred_paths;
    std::string out_path;
    std::optional<double> rate;
};

struct ExperimentArgs {
    std::string config = "default";
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::string basis;
    std::vector<double> rates;
    std::vector<double> windows;
    std::optional<double> duration_s;
};

int run_simulate(const SimulateArgs& a, std::ostream& out) {
    const Transient tr = simulate_transient(a.cell, a.duration_s, a.rate_hz, {a.sigma_a, a.seed});
    save_transient(fs::path(a.out_path), tr);
    out << "wrote " << a.out_path << " (" << tr.size() << " samples @ "
        << format_human(tr.rate_hz()) << " Hz)\n";
    return 0;
}

int run_correct(const CorrectArgs& a, std::ostream& out) {
    CorrectionCoeffs coeffs;
    if (!a.config.empty()) coeffs = resolve_config(a.config).correction;
    if (!a.parse.empty()) {
        if (a.parse == "scaled") coeffs.parse = CorrectionParse::kScaledExponent;
        else if (a.parse == "literal") coeffs.parse = CorrectionParse::kLiteralExponent;
        else throw std::invalid_argument("correction parse must be 'scaled' or 'literal'");
    }
    if (a.temp_c.has_value() != a.rh_pct.has_value()) {
        throw std::invalid_argument("--temp-c and --rh-pct must be given together");
    }
    const TransientRecord record = load_transient(fs::path(a.in_path), a.rate);

    std::vector<Sample> corrected;
    corrected.reserve(record.transient.size());
    if (a.temp_c) {
        const EnvironmentReading env{*a.temp_c, *a.rh_pct};
        for (const Sample& s : record.transient.samples()) {
            corrected.push_back({s.t_s, correct(s.current_a, env, coeffs)});
        }
    } else if (record.environment) {
        const auto& env = *record.environment;
        for (std::size_t i = 0; i < record.transient.size(); ++i) {
            const Sample& s = record.transient[i];
            corrected.push_back({s.t_s, correct(s.current_a, env[i], coeffs)});
        }
    } else {
        throw std::invalid_argument(
            "no environment readings: the file has no temp_c/rh_pct columns and no "
            "--temp-c/--rh-pct flags were given");
    }
    const Transient result(record.transient.rate_hz(), std::move(corrected), kFileGridTolS);
    save_transient(fs::path(a.out_path), result);
    out << "wrote " << a.out_path << " (" << result.size() << " corrected samples)\n";
    return 0;
}

int run_fit(const FitArgs& a, std::ostream& out) {
    const FitBasis basis = parse_basis(a.basis);
    FitReport fit;
    if (basis == FitBasis::kValueMapping) {
        if (a.baseline_path.empty()) {
            throw std::invalid_argument("value-mapping fits need --baseline");
        }
        const Transient pulse = load_transient(fs::path(a.in_path), a.rate).transient;
        const Transient baseline = load_transient(fs::path(a.baseline_path), a.rate).transient;
        fit = fit_pulse(pulse, baseline, FitBasis::kValueMapping);
    } else {
        const auto [xs, ys] = load_xy(a.in_path);
        fit = fit_inverse(xs, ys, FitBasis::kTime);
    }
    print_fit(out, fit);
    return 0;
}

int run_infer(const InferArgs& a, std::ostream& out) {
    if (parse_basis(a.basis) == FitBasis::kValueMapping) {
        throw std::invalid_argument(
            "a value-mapping model cannot extrapolate standalone; use the time basis");
    }
    const Transient pulse = load_transient(fs::path(a.in_path), a.rate).transient;
    const FitReport fit = fit_pulse(pulse);
    const Transient full = infer_full_sequence(fit.model, pulse, a.duration_s);
    save_transient(fs::path(a.out_path), full);
    print_fit(out, fit);
    out << "wrote " << a.out_path << " (" << full.size() << " samples, "
        << pulse.size() << " measured + " << (full.size() - pulse.size()) << " inferred)\n";
    return 0;
}

int run_stats(const StatsArgs& a, std::ostream& out) {
    const Transient baseline = load_transient(fs::path(a.baseline_path), a.rate).transient;
    std::vector<WindowResult> results;
    results.reserve(a.inferred_paths.size());
    for (const std::string& path : a.inferred_paths) {
        Transient inferred = load_transient(fs::path(path), a.rate).transient;
        const double r2 = r_squared_vs(baseline, inferred);
        const double delta_na = std::abs(inferred.tdc_a() - baseline.tdc_a()) * 1e9;
        results.push_back({baseline.rate_hz(), inferred.end_s(), FitReport{},
                           std::move(inferred), r2, delta_na});
    }
    const VariabilityStats stats = variability_stats(results, baseline);
    for (std::size_t i = 0; i < results.size(); ++i) {
        out << a.inferred_paths[i] << ": r2 = " << format_human(results[i].r2_vs_baseline)
            << ", tdc_delta_na = " << format_human(results[i].tdc_delta_na) << '\n';
    }
    print_stats(out, stats);

    if (!a.out_path.empty()) {
        Json doc{{"tool", Json{{"name", kToolName}, {"version", kToolVersion}}},
                 {"baseline", a.baseline_path}};
        Json files = Json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            files.push_back(Json{{"file", a.inferred_paths[i]},
                                 {"r2_vs_baseline", results[i].r2_vs_baseline},
                                 {"tdc_delta_na", results[i].tdc_delta_na}});
        }
        doc["files"] = std::move(files);
        doc["stats"] = Json{{"inter_seq_mu_na", stats.inter_seq_mu_na},
                            {"inter_seq_sigma_na", stats.inter_seq_sigma_na},
                            {"delta_mu_na", stats.delta_mu_na},
                            {"delta_sigma_na", stats.delta_sigma_na},
                            {"avg_r2", stats.avg_r2}};
        write_report(fs::path(a.out_path), doc);
        out << "wrote " << a.out_path << '\n';
    }
    return 0;
}

int run_experiment_cmd(const ExperimentArgs& a, std::ostream& out) {
    ExperimentConfig cfg = resolve_config(a.config);
    if (a.seed) cfg.seed = *a.seed;
    if (!a.basis.empty()) cfg.basis = parse_basis(a.basis);
    if (!a.rates.empty()) cfg.rates_hz = a.rates;
    if (!a.windows.empty()) cfg.windows_s = a.windows;
    if (a.duration_s) cfg.duration_s = *a.duration_s;
    cfg.validate();

    const ExperimentResult result = run_experiment(cfg);

    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const fs::path report_path = dir / "report.json";
    write_report(report_path, build_report(cfg, result));

    std::vector<fs::path> plot_paths;
    for (const RateResult& rr : result.rates) {
        std::vector<std::pair<double, const Transient*>> inferred;
        inferred.reserve(rr.windows.size());
        for (const WindowResult& wr : rr.windows) {
            inferred.emplace_back(wr.window_s, &wr.inferred);
        }
        const fs::path plot_path = dir / ("plot_" + format_double(rr.rate_hz) + "hz.csv");
        emit_plot_data(plot_path, rr.baseline, inferred);
        plot_paths.push_back(plot_path);
    }

    for (const RateResult& rr : result.rates) {
        out << "rate " << format_human(rr.rate_hz) << " Hz: " << rr.windows.size() << " windows ok, "
            << rr.failures.size() << " failed";
        if (rr.stats) {
            out << ", avg_r2 = " << format_human(rr.stats->avg_r2)
                << ", delta_mu = " << format_human(rr.stats->delta_mu_na) << " nA";
        }
        if (rr.best_window) {
            out << ", best window " << format_human(rr.windows[*rr.best_window].window_s) << " s";
        }
        out << '\n';
        for (const WindowFailure& wf : rr.failures) {
            out << "  window " << format_human(wf.window_s) << " s failed: " << wf.message << '\n';
        }
    }
    if (result.best) {
        const auto& [ri, wi] = *result.best;
        out << "best: window " << format_human(result.rates[ri].windows[wi].window_s) << " s @ "
            << format_human(result.rates[ri].rate_hz) << " Hz\n";
    }
    out << "wrote " << report_path.string();
    for (const fs::path& p : plot_paths) out << ", " << p.string();
    out << '\n';
    return 0;
}

}  // namespace

int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"chronoamperometric transient simulation, correction and sub-second inference",
                 std::string(kToolName)};
    app.set_help_all_flag("--help-all");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "write a simulated transient CSV");
    sim_cmd->add_option("--duration", sim.duration_s, "sequence length in seconds");
    sim_cmd->add_option("--rate", sim.rate_hz, "sampling rate in Hz");
    sim_cmd->add_option("--sigma", sim.sigma_a, "additive Gaussian noise sigma in amperes");
    sim_cmd->add_option("--seed", sim.seed, "noise seed");
    sim_cmd->add_option("--n-e", sim.cell.n_e, "electrons per analyte molecule");
    sim_cmd->add_option("--faraday", sim.cell.faraday, "Faraday constant in C/mol");
    sim_cmd->add_option("--area-cm2", sim.cell.area_cm2, "electrode area in cm^2");
    sim_cmd->add_option("--conc", sim.cell.conc_mol_per_cm3, "concentration in mol/cm^3");
    sim_cmd->add_option("--diff", sim.cell.diff_cm2_per_s, "diffusion coefficient in cm^2/s");
    sim_cmd->add_option("--out", sim.out_path, "output CSV path")->required();

    CorrectArgs cor;
    auto* cor_cmd = app.add_subcommand("correct", "rewrite a transient through the T/RH correction");
    cor_cmd->add_option("input", cor.in_path, "input CSV")->required();
    cor_cmd->add_option("--out", cor.out_path, "output CSV path")->required();
    cor_cmd->add_option("--config", cor.config, "config file for correction coefficients");
    cor_cmd->add_option("--temp-c", cor.temp_c, "ambient temperature (overrides file columns)");
    cor_cmd->add_option("--rh-pct", cor.rh_pct, "relative humidity (overrides file columns)");
    cor_cmd->add_option("--parse", cor.parse, "exponential reading: scaled|literal");
    cor_cmd->add_option("--rate", cor.rate, "sampling rate override in Hz");

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "fit the inverse-regression model to a series");
    fit_cmd->add_option("input", fit.in_path, "input CSV")->required();
    fit_cmd->add_option("--basis", fit.basis, "fit basis: time|value");
    fit_cmd->add_option("--baseline", fit.baseline_path, "baseline CSV (value basis)");
    fit_cmd->add_option("--rate", fit.rate, "sampling rate override in Hz");

    InferArgs inf;
    auto* inf_cmd = app.add_subcommand("infer", "extend a pulse to a full sequence");
    inf_cmd->add_option("input", inf.in_path, "pulse CSV")->required();
    inf_cmd->add_option("--duration", inf.duration_s, "target duration in seconds");
    inf_cmd->add_option("--basis", inf.basis, "fit basis (only 'time' can extrapolate)");
    inf_cmd->add_option("--rate", inf.rate, "sampling rate override in Hz");
    inf_cmd->add_option("--out", inf.out_path, "output CSV path")->required();

    StatsArgs sta;
    auto* sta_cmd = app.add_subcommand("stats", "variability statistics of inferred sequences");
    sta_cmd->add_option("--baseline", sta.baseline_path, "baseline CSV")->required();
    sta_cmd->add_option("inferred", sta.inferred_paths, "inferred sequence CSVs")->required();
    sta_cmd->add_option("--out", sta.out_path, "write statistics as JSON");
    sta_cmd->add_option("--rate", sta.rate, "sampling rate override in Hz");

    ExperimentArgs exp;
    auto* exp_cmd = app.add_subcommand("experiment", "run the full windows x rates grid");
    exp_cmd->add_option("--config", exp.config, "config file path, or 'default'");
    exp_cmd->add_option("--out", exp.out_dir, "output directory");
    exp_cmd->add_option("--seed", exp.seed, "noise seed override");
    exp_cmd->add_option("--basis", exp.basis, "fit basis override: time|value");
    exp_cmd->add_option("--rate", exp.rates, "sampling rate(s) override in Hz");
    exp_cmd->add_option("--window", exp.windows, "measurement window(s) override in seconds");
    exp_cmd->add_option("--duration", exp.duration_s, "baseline duration override in seconds");

    app.require_subcommand(1);

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes reversed argument vectors
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            const auto parsed = app.get_subcommands();
            out << (parsed.empty() ? app.help() : parsed.front()->help());
            return 0;
        }
        err << "error: " << e.what() << '\n'
            << "run '" << kToolName << " --help' for usage\n";
        return 2;
    }

    try {
        if (sim_cmd->parsed()) return run_simulate(sim, out);
        if (cor_cmd->parsed()) return run_correct(cor, out);
        if (fit_cmd->parsed()) return run_fit(fit, out);
        if (inf_cmd->parsed()) return run_infer(inf, out);
        if (sta_cmd->parsed()) return run_stats(sta, out);
        if (exp_cmd->parsed()) return run_experiment_cmd(exp, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace chronopulse
