#include "chronopulse/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "chronopulse/errors.hpp"
#include "chronopulse/numformat.hpp"

namespace chronopulse {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<double> parse_list(std::string_view value) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = value.find(',', start);
        const std::string_view item =
            comma == std::string_view::npos ? value.substr(start) : value.substr(start, comma - start);
        out.push_back(parse_double(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

long long parse_integer(std::string_view token) {
    token = trim(token);
    long long v = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw ParseError("malformed integer '" + std::string(token) + "'");
    }
    return v;
}

std::uint64_t parse_seed(std::string_view token) {
    token = trim(token);
    std::uint64_t v = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw ParseError("malformed seed '" + std::string(token) + "'");
    }
    return v;
}

}  // namespace

std::string_view to_string(FitBasis basis) {
    return basis == FitBasis::kTime ? "time" : "value";
}

std::string_view to_string(FitAggregation aggregation) {
    return aggregation == FitAggregation::kAverageThenFit ? "average_then_fit" : "fit_then_average";
}

std::string_view to_string(CorrectionApply apply) {
    return apply == CorrectionApply::kPerSample ? "per_sample" : "final_tdc";
}

std::string_view to_string(CorrectionParse parse) {
    return parse == CorrectionParse::kScaledExponent ? "scaled" : "literal";
}

ExperimentConfig parse_config(std::istream& in, std::string_view source_name) {
    ExperimentConfig cfg;
    std::optional<double> env_temp, env_rh;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string_view line(raw);
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(source_name) + ": line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        try {
            if (key == "duration_s") {
                cfg.duration_s = parse_double(value);
            } else if (key == "windows_s") {
                cfg.windows_s = parse_list(value);
            } else if (key == "rates_hz") {
                cfg.rates_hz = parse_list(value);
            } else if (key == "repeats") {
                cfg.repeats = static_cast<int>(parse_integer(value));
            } else if (key == "basis") {
                if (value == "time") cfg.basis = FitBasis::kTime;
                else if (value == "value") cfg.basis = FitBasis::kValueMapping;
                else throw ConfigError("basis must be 'time' or 'value'");
            } else if (key == "aggregation") {
                if (value == "average_then_fit") cfg.aggregation = FitAggregation::kAverageThenFit;
                else if (value == "fit_then_average") cfg.aggregation = FitAggregation::kFitThenAverage;
                else throw ConfigError("aggregation must be 'average_then_fit' or 'fit_then_average'");
            } else if (key == "noise.sigma_a") {
                if (value == "auto") cfg.noise_sigma_a.reset();
                else cfg.noise_sigma_a = parse_double(value);
            } else if (key == "noise.seed") {
                cfg.seed = parse_seed(value);
            } else if (key == "cell.n_e") {
                cfg.cell.n_e = static_cast<int>(parse_integer(value));
            } else if (key == "cell.faraday") {
                cfg.cell.faraday = parse_double(value);
            } else if (key == "cell.area_cm2") {
                cfg.cell.area_cm2 = parse_double(value);
            } else if (key == "cell.conc_mol_per_cm3") {
                cfg.cell.conc_mol_per_cm3 = parse_double(value);
            } else if (key == "cell.diff_cm2_per_s") {
                cfg.cell.diff_cm2_per_s = parse_double(value);
            } else if (key == "correction.apply") {
                if (value == "per_sample") cfg.correction_apply = CorrectionApply::kPerSample;
                else if (value == "final_tdc") cfg.correction_apply = CorrectionApply::kFinalTdc;
                else throw ConfigError("correction.apply must be 'per_sample' or 'final_tdc'");
            } else if (key == "correction.parse") {
                if (value == "scaled") cfg.correction.parse = CorrectionParse::kScaledExponent;
                else if (value == "literal") cfg.correction.parse = CorrectionParse::kLiteralExponent;
                else throw ConfigError("correction.parse must be 'scaled' or 'literal'");
            } else if (key == "correction.temp_gain") {
                cfg.correction.temp_gain = parse_double(value);
            } else if (key == "correction.temp_scale") {
                cfg.correction.temp_scale = parse_double(value);
            } else if (key == "correction.temp_exp") {
                cfg.correction.temp_exp = parse_double(value);
            } else if (key == "correction.rh_gain") {
                cfg.correction.rh_gain = parse_double(value);
            } else if (key == "correction.rh_scale") {
                cfg.correction.rh_scale = parse_double(value);
            } else if (key == "correction.rh_exp") {
                cfg.correction.rh_exp = parse_double(value);
            } else if (key == "env.temp_c") {
                env_temp = parse_double(value);
            } else if (key == "env.rh_pct") {
                env_rh = parse_double(value);
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string(source_name) + ": line " + std::to_string(line_no) +
                              ": " + e.what());
        }
    }

    if (env_temp.has_value() != env_rh.has_value()) {
        throw ConfigError(std::string(source_name) +
                          ": env.temp_c and env.rh_pct must be set together");
    }
    if (env_temp) {
        cfg.environment = EnvironmentReading{*env_temp, *env_rh};
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path.string() + "'");
    }
    return parse_config(in, path.string());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    auto list = [](const std::vector<double>& values) {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) s += ", ";
            s += format_double(values[i]);
        }
        return s;
    };
    out << "duration_s = " << format_double(cfg.duration_s) << '\n'
        << "windows_s = " << list(cfg.windows_s) << '\n'
        << "rates_hz = " << list(cfg.rates_hz) << '\n'
        << "repeats = " << cfg.repeats << '\n'
        << "basis = " << to_string(cfg.basis) << '\n'
        << "aggregation = " << to_string(cfg.aggregation) << '\n'
        << "noise.sigma_a = " << format_double(cfg.effective_sigma_a()) << '\n'
        << "noise.seed = " << cfg.seed << '\n'
        << "cell.n_e = " << cfg.cell.n_e << '\n'
        << "cell.faraday = " << format_double(cfg.cell.faraday) << '\n'
        << "cell.area_cm2 = " << format_double(cfg.cell.area_cm2) << '\n'
        << "cell.conc_mol_per_cm3 = " << format_double(cfg.cell.conc_mol_per_cm3) << '\n'
        << "cell.diff_cm2_per_s = " << format_double(cfg.cell.diff_cm2_per_s) << '\n'
        << "correction.apply = " << to_string(cfg.correction_apply) << '\n'
        << "correction.parse = " << to_string(cfg.correction.parse) << '\n'
        << "correction.temp_gain = " << format_double(cfg.correction.temp_gain) << '\n'
        << "correction.temp_scale = " << format_double(cfg.correction.temp_scale) << '\n'
        << "correction.temp_exp = " << format_double(cfg.correction.temp_exp) << '\n'
        << "correction.rh_gain = " << format_double(cfg.correction.rh_gain) << '\n'
        << "correction.rh_scale = " << format_double(cfg.correction.rh_scale) << '\n'
        << "correction.rh_exp = " << format_double(cfg.correction.rh_exp) << '\n';
    if (cfg.environment) {
        out << "env.temp_c = " << format_double(cfg.environment->temp_c) << '\n'
            << "env.rh_pct = " << format_double(cfg.environment->rh_pct) << '\n';
    }
    return out.str();
}

}  // namespace chronopulse
