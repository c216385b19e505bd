#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sbl/rng.hpp"

namespace sbl {

/// Seeded discrete Wiener path: per-mode N(0, dt) increments on a time grid.
///
/// Increments are addressed by (seed, mode, step index) through a
/// counter-based generator, so regeneration is bit-identical and independent
/// of evaluation order. Midpoint refinement keeps every coarse-grid value of
/// W by construction (child increments sum to the parent) and draws the
/// bridge midpoints from (seed, mode, parent step, level).
class BrownianPath {
public:
    /// Empty path: no steps, time grid {0}.
    BrownianPath() : time_grid_{0.0} {}

    /// time_grid must start at 0 and be strictly increasing.
    static BrownianPath sample(std::uint64_t seed, int modes, std::vector<double> time_grid);

    /// Convenience: n uniform steps on [0, t_end].
    static BrownianPath sample_uniform(std::uint64_t seed, int modes, double t_end, int n_steps);

    std::uint64_t seed() const { return seed_; }
    int modes() const { return modes_; }
    int steps() const { return static_cast<int>(time_grid_.size()) - 1; }
    const std::vector<double>& time_grid() const { return time_grid_; }
    int refinement_level() const { return level_; }

    double increment(int mode, int step) const {
        return increments_[static_cast<std::size_t>(mode) * steps() + step];
    }

    /// sum_k dW_k(step) / sqrt(m): the combined increment driving
    /// sigma-coupled updates when all modes share the same coefficient shape.
    double combined_increment(int step) const;

    /// W_k at every grid node (starts at 0).
    std::vector<double> cumulative(int mode) const;

    /// Brownian-bridge midpoint refinement; requires a uniform grid.
    BrownianPath refined() const;

private:
    std::uint64_t seed_ = 0;
    int modes_ = 1;
    int level_ = 0;
    std::vector<double> time_grid_;
    std::vector<double> increments_;  // [mode * steps + step]
};

/// One row per increment: step, mode, increment.
void write_path_csv(std::ostream& os, const BrownianPath& p);
void write_path_csv(const std::string& path, const BrownianPath& p);

}  // namespace sbl
