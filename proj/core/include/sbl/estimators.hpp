#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sbl/field.hpp"
#include "sbl/solver.hpp"
#include "sbl/weight_function.hpp"

namespace sbl {

/// Discrete total variation: sum over axes of |u_{j+1} - u_j| times the
/// transverse cell measure, with periodic wraparound.
double bv_seminorm(const Field& u);

/// (sum |u_j|^p h^d)^(1/p); pass p = infinity for max |u_j|.
double lp_norm(const Field& u, double p);

double l1_distance(const Field& a, const Field& b);

/// Positive part of the difference: sum (a - b)^+ h^d.
double l1_positive_part(const Field& a, const Field& b);

/// Time average over snapshot times in [window_lo, window_hi] of
/// int |u(t + dt) - u(t)| dx. dt must be a multiple of the (uniform)
/// snapshot spacing.
double temporal_l1_modulus(const Trajectory& traj, double dt, double window_lo,
                           double window_hi);

/// max over per-axis grid shifts z (|z| <= delta) of
/// sum |u(x + z) - u(x)| psi(x - center) h^d. Returns 0 when delta < h.
double translation_modulus(const Field& u, double delta, const WeightFunction& psi);

/// Double cell sum of |u(x+z) - u(x-z)| J_delta(z) psi(x - center), with the
/// sampled kernel renormalized to unit discrete mass. Requires delta >= 2h.
double besov_dual_modulus(const Field& u, double delta, const WeightFunction& psi);

/// Monte Carlo statistic of one functional of the solution.
struct EstimateReport {
    std::string name;
    std::vector<double> per_path;  // NaN marks a failed path
    double mean = 0.0;
    double stderr_mean = 0.0;      // sample std / sqrt(successes)
    int paths = 0;
    std::uint64_t seed_base = 0;
    int failures = 0;
    std::string first_failure;
};

/// Runs `statistic(seed_base + i, i)` for i = 0..paths-1, distributing the
/// work across a pool with per-index result slots, so the report does not
/// depend on scheduling. Paths that throw BlowUpError are recorded as
/// failures; more than max_failure_fraction aborts the estimate.
EstimateReport mc_expectation(const std::string& name, int paths, std::uint64_t seed_base,
                              const std::function<double(std::uint64_t, int)>& statistic,
                              int threads = 0, double max_failure_fraction = 0.10);

/// Same contract for statistics with several outputs per path; one report
/// per named component, all computed from a single pass over the paths.
std::vector<EstimateReport> mc_vector_expectation(
    const std::vector<std::string>& names, int paths, std::uint64_t seed_base,
    const std::function<std::vector<double>(std::uint64_t, int)>& statistic, int threads = 0,
    double max_failure_fraction = 0.10);

/// Least-squares line through (log scale, log value); slope is the
/// empirical rate.
struct RateFit {
    std::vector<std::pair<double, double>> points;
    double slope = 0.0;
    double intercept = 0.0;  // of the log-log line
    double r_squared = 0.0;
};

/// Requires >= 3 points with positive scales and values.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

}  // namespace sbl
