#pragma once

#include <string>

#include "sbl/experiment_config.hpp"
#include "sbl/result_record.hpp"

namespace sbl {

/// Runs one configured experiment and returns the judged record. When
/// output_dir is non-empty, auxiliary artifacts (ratio tables) are written
/// there as well; the record itself is written by the caller.
ResultRecord run_experiment(const ExperimentConfig& cfg, int threads = 0,
                            const std::string& output_dir = {});

/// Cell-average restriction of a finer field onto a coarser grid whose cell
/// counts divide the fine ones.
Field restrict_to_grid(const Field& fine, const Grid& coarse);

}  // namespace sbl
