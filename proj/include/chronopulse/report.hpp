#ifndef CHRONOPULSE_REPORT_HPP
#define CHRONOPULSE_REPORT_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "chronopulse/experiment.hpp"

namespace chronopulse {

using Json = nlohmann::ordered_json;

/// Builds the run report: tool metadata, the full effective configuration
/// (every defaulted value resolved, so a run is reproducible from the report
/// alone), per-window fit records, per-rate variability statistics and the
/// best-window selection. Current statistics appear in both A and nA.
Json build_report(const ExperimentConfig& cfg, const ExperimentResult& result);

/// Serialized report text (2-space indent, trailing newline). Parsing and
/// re-serializing this text is byte-identical.
std::string report_text(const Json& report);

void write_report(const std::filesystem::path& path, const Json& report);

}  // namespace chronopulse

#endif
