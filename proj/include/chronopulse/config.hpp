#ifndef CHRONOPULSE_CONFIG_HPP
#define CHRONOPULSE_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "chronopulse/experiment.hpp"

namespace chronopulse {

/// Parses the flat key-value experiment configuration.
///
/// Grammar: one `key = value` per line, `#` starts a comment, blank lines are
/// ignored. Lists are comma-separated. Unknown keys are rejected. Keys:
///
///   duration_s, windows_s, rates_hz, repeats, basis (time|value),
///   aggregation (average_then_fit|fit_then_average),
///   noise.sigma_a (amperes or `auto`), noise.seed,
///   cell.n_e, cell.faraday, cell.area_cm2, cell.conc_mol_per_cm3,
///   cell.diff_cm2_per_s,
///   correction.apply (per_sample|final_tdc), correction.parse (scaled|literal),
///   correction.temp_gain, correction.temp_scale, correction.temp_exp,
///   correction.rh_gain, correction.rh_scale, correction.rh_exp,
///   env.temp_c, env.rh_pct (set both to enable correction)
///
/// Every key is optional; omitted keys keep the documented defaults.
ExperimentConfig parse_config(std::istream& in, std::string_view source_name = "<stream>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Serializes the effective configuration (all defaults resolved) in the same
/// key-value format.
std::string serialize_config(const ExperimentConfig& cfg);

std::string_view to_string(FitBasis basis);
std::string_view to_string(FitAggregation aggregation);
std::string_view to_string(CorrectionApply apply);
std::string_view to_string(CorrectionParse parse);

}  // namespace chronopulse

#endif
