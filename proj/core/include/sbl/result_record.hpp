#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbl/estimators.hpp"
#include "sbl/experiment_config.hpp"

namespace sbl {

struct ScaleRow {
    std::string name;
    double scale = 0.0;
    double mean = 0.0;
    double stderr_mean = 0.0;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double bound = 0.0;
    std::string relation;  // "<=", ">=", "in", "finite"
};

/// Everything an experiment run produced. pass/fail is derived from rows,
/// scalars and fits alone (see evaluate_verdict), so stored records can be
/// re-judged offline.
struct ResultRecord {
    std::string experiment;
    std::string label;
    std::uint64_t digest = 0;
    nlohmann::json config_json;
    std::vector<ScaleRow> rows;
    std::map<std::string, double> scalars;
    std::optional<RateFit> fit;
    std::vector<CheckResult> checks;
    bool pass = false;
    double wall_time_s = 0.0;
};

/// Recomputes checks and the overall verdict from the recorded numbers.
void evaluate_verdict(ResultRecord& rec);

nlohmann::json record_to_json(const ResultRecord& rec);
ResultRecord record_from_json(const nlohmann::json& j);

/// Writes <dir>/<label>.json plus the CSV tables
/// (<label>_scales.csv: name,scale,mean,stderr and
///  <label>_fit.csv: slope,intercept,r_squared).
void write_record(const std::string& dir, const ResultRecord& rec);
ResultRecord load_record(const std::string& json_path);

/// Append-mode one-line summary of an estimate or a fit
/// (columns: name, M, mean, stderr, slope, r_squared).
void append_summary_csv(const std::string& path, const EstimateReport& rep);
void append_summary_csv(const std::string& path, const std::string& name, const RateFit& fit);

}  // namespace sbl
