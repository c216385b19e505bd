#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbl/grid.hpp"
#include "sbl/problem.hpp"
#include "sbl/weight_function.hpp"

namespace sbl {

struct GridSpec {
    int dim = 1;
    std::array<int, 2> cells = {512, 1};
    std::array<double, 2> length = {1.0, 1.0};

    Grid build() const;
};

struct McSpec {
    int paths = 100;
    std::uint64_t seed = 1;
    /// Base Wiener grid resolution; the solver refines dyadically from here.
    int path_steps = 256;
};

/// One experiment: which theorem to exercise, on which problem/grid, with
/// which Monte Carlo budget and scale grid. `params` carries the pass/fail
/// rule constants so a stored record can be re-judged offline.
struct ExperimentConfig {
    std::string experiment;  // bv_decay, time_continuity, contraction, visc_rate,
                             // cont_dep_sigma, cont_dep_flux, fractional_bv,
                             // entropy_residual, lemma_checks
    std::string label;       // distinguishes several runs of one experiment
    Problem problem;
    std::optional<InitialData> initial2;  // contraction: the second initial datum
    GridSpec grid;
    McSpec mc;
    std::vector<double> scales;
    WeightFunction weight = WeightFunction::one();
    std::string output;
    std::map<std::string, double> params;

    double param_or(const std::string& key, double fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }

    void require_valid() const;
};

nlohmann::json problem_to_json(const Problem& p);
Problem problem_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// FNV-1a digest of the canonical dump, stable across runs and platforms.
std::uint64_t config_digest(const ExperimentConfig& cfg);

const std::vector<std::string>& known_experiments();

}  // namespace sbl
