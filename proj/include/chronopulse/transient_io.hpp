#ifndef CHRONOPULSE_TRANSIENT_IO_HPP
#define CHRONOPULSE_TRANSIENT_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "chronopulse/correction.hpp"
#include "chronopulse/transient.hpp"

namespace chronopulse {

/// CSV schema: header `time_s,current_a` or `time_s,current_a,temp_c,rh_pct`,
/// one sample per row in decimal notation (optional scientific exponent).
/// Time must be strictly increasing, uniformly spaced within 1e-9 s, and the
/// grid must start at one sample period. Missing environment columns imply no
/// correction.
struct TransientRecord {
    Transient transient;
    /// Per-row environment readings when the file carries them.
    std::optional<std::vector<EnvironmentReading>> environment;
};

/// Parses a transient file. The rate is inferred from the median sample
/// spacing unless `rate_override` is given, which wins on conflict with the
/// inferred value (the grid must still match it). Errors name the offending
/// 1-based line.
TransientRecord load_transient(std::istream& in, std::string_view source_name = "<stream>",
                               std::optional<double> rate_override = std::nullopt);
TransientRecord load_transient(const std::filesystem::path& path,
                               std::optional<double> rate_override = std::nullopt);

/// Writes the CSV form. Every number is the shortest round-trip decimal, so
/// load(save(x)) reproduces x exactly and re-saving is byte-identical.
void save_transient(std::ostream& out, const Transient& tr,
                    const std::vector<EnvironmentReading>* environment = nullptr);
void save_transient(const std::filesystem::path& path, const Transient& tr,
                    const std::vector<EnvironmentReading>* environment = nullptr);

/// Wide plot-data CSV: `time_s,baseline_a,inferred_<window>s_a,...`, one
/// column per inferred sequence. All sequences must share the baseline grid.
void emit_plot_data(std::ostream& out, const Transient& baseline,
                    const std::vector<std::pair<double, const Transient*>>& inferred_by_window);
void emit_plot_data(const std::filesystem::path& path, const Transient& baseline,
                    const std::vector<std::pair<double, const Transient*>>& inferred_by_window);

}  // namespace chronopulse

#endif
