#pragma once

#include <string>
#include <vector>

#include "sbl/experiment_config.hpp"
#include "sbl/result_record.hpp"

namespace sbl {

/// The pinned desk-scale verification suite: one configuration per
/// quantitative estimate, with tolerances fixed in the configs.
std::vector<ExperimentConfig> acceptance_suite_configs();

struct SuiteResult {
    std::vector<ResultRecord> records;
    bool all_pass = false;
};

/// Runs every suite configuration, writes records + CSV tables under outdir.
SuiteResult run_suite(const std::string& outdir, int threads = 0, bool verbose = true);

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Folds the suite records into the numbered criteria (1..10); criterion 11
/// (byte-identical reruns) is appended by compare_csv_dirs callers.
std::vector<CriterionResult> fold_into_criteria(const SuiteResult& suite);

/// True when both directories hold the same set of *.csv files with
/// identical bytes; mismatches are described in detail.
bool compare_csv_dirs(const std::string& a, const std::string& b, std::string& detail);

}  // namespace sbl
