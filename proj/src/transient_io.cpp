#include "chronopulse/transient_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "chronopulse/errors.hpp"
#include "chronopulse/numformat.hpp"

namespace chronopulse {

namespace {

constexpr std::string_view kHeaderBare = "time_s,current_a";
constexpr std::string_view kHeaderEnv = "time_s,current_a,temp_c,rh_pct";

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

[[noreturn]] void fail(std::string_view source, std::size_t line_no, const std::string& what) {
    throw ParseError(std::string(source) + ": line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

TransientRecord load_transient(std::istream& in, std::string_view source_name,
                               std::optional<double> rate_override) {
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&](std::string& out) {
        if (!std::getline(in, out)) return false;
        ++line_no;
        if (!out.empty() && out.back() == '\r') out.pop_back();
        return true;
    };

    if (!next_line(line)) {
        throw ParseError(std::string(source_name) + ": empty file");
    }
    bool has_env = false;
    if (line == kHeaderEnv) {
        has_env = true;
    } else if (line != kHeaderBare) {
        fail(source_name, line_no, "unrecognized header '" + line + "'");
    }

    std::vector<Sample> samples;
    std::vector<EnvironmentReading> env;
    while (next_line(line)) {
        if (line.empty()) {
            // A single blank line is tolerated only at EOF.
            if (in.peek() != std::istream::traits_type::eof()) {
                fail(source_name, line_no, "blank line inside data");
            }
            break;
        }
        const auto fields = split_fields(line);
        const std::size_t expected = has_env ? 4 : 2;
        if (fields.size() != expected) {
            fail(source_name, line_no,
                 "expected " + std::to_string(expected) + " fields, got " +
                     std::to_string(fields.size()));
        }
        Sample s{};
        try {
            s.t_s = parse_double(fields[0]);
            s.current_a = parse_double(fields[1]);
            if (has_env) {
                EnvironmentReading r{parse_double(fields[2]), parse_double(fields[3])};
                r.validate();
                env.push_back(r);
            }
        } catch (const std::exception& e) {
            fail(source_name, line_no, e.what());
        }
        if (!samples.empty() && !(s.t_s > samples.back().t_s)) {
            fail(source_name, line_no, "time not strictly increasing");
        }
        samples.push_back(s);
    }
    if (samples.empty()) {
        throw ParseError(std::string(source_name) + ": no data rows");
    }

    // Spacing consistency against the median interval.
    std::vector<double> spacings;
    spacings.reserve(samples.size() - 1);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        spacings.push_back(samples[i].t_s - samples[i - 1].t_s);
    }
    double period;
    if (spacings.empty()) {
        period = samples.front().t_s;  // single row: the grid starts at one period
    } else {
        std::vector<double> sorted(spacings);
        std::sort(sorted.begin(), sorted.end());
        period = sorted[sorted.size() / 2];
        for (std::size_t i = 0; i < spacings.size(); ++i) {
            if (std::abs(spacings[i] - period) > kFileGridTolS) {
                fail(source_name, i + 3, "inconsistent sample spacing");  // rows start at line 2
            }
        }
    }
    if (!(period > 0.0)) {
        throw ParseError(std::string(source_name) + ": nonpositive sample spacing");
    }

    double rate = snap_rate(1.0 / period);
    if (rate_override) {
        if (!(*rate_override > 0.0)) {
            throw std::invalid_argument("rate override must be positive");
        }
        rate = *rate_override;
    }

    Transient tr = [&] {
        try {
            return Transient(rate, std::move(samples), kFileGridTolS);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string(source_name) + ": " + e.what() +
                             (rate_override ? " (with --rate override)" : ""));
        }
    }();

    TransientRecord record{std::move(tr), std::nullopt};
    if (has_env) record.environment = std::move(env);
    return record;
}

TransientRecord load_transient(const std::filesystem::path& path,
                               std::optional<double> rate_override) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    return load_transient(in, path.string(), rate_override);
}

void save_transient(std::ostream& out, const Transient& tr,
                    const std::vector<EnvironmentReading>* environment) {
    if (environment && environment->size() != tr.size()) {
        throw std::invalid_argument("environment series length differs from the transient");
    }
    out << (environment ? kHeaderEnv : kHeaderBare) << '\n';
    for (std::size_t i = 0; i < tr.size(); ++i) {
        out << format_double(tr[i].t_s) << ',' << format_double(tr[i].current_a);
        if (environment) {
            out << ',' << format_double((*environment)[i].temp_c) << ','
                << format_double((*environment)[i].rh_pct);
        }
        out << '\n';
    }
}

void save_transient(const std::filesystem::path& path, const Transient& tr,
                    const std::vector<EnvironmentReading>* environment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write '" + path.string() + "'");
    }
    save_transient(out, tr, environment);
}

void emit_plot_data(std::ostream& out, const Transient& baseline,
                    const std::vector<std::pair<double, const Transient*>>& inferred_by_window) {
    for (const auto& [window, tr] : inferred_by_window) {
        if (tr == nullptr || !same_grid(baseline, *tr)) {
            throw GridMismatchError("inferred sequence for window " + format_double(window) +
                                    " does not share the baseline grid");
        }
    }
    out << "time_s,baseline_a";
    for (const auto& [window, tr] : inferred_by_window) {
        out << ",inferred_" << format_double(window) << "s_a";
    }
    out << '\n';
    for (std::size_t i = 0; i < baseline.size(); ++i) {
        out << format_double(baseline[i].t_s) << ',' << format_double(baseline[i].current_a);
        for (const auto& [window, tr] : inferred_by_window) {
            out << ',' << format_double((*tr)[i].current_a);
        }
        out << '\n';
    }
}

void emit_plot_data(const std::filesystem::path& path, const Transient& baseline,
                    const std::vector<std::pair<double, const Transient*>>& inferred_by_window) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write '" + path.string() + "'");
    }
    emit_plot_data(out, baseline, inferred_by_window);
}

}  // namespace chronopulse
