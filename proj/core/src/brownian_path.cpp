#include "sbl/brownian_path.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sbl {

BrownianPath BrownianPath::sample(std::uint64_t seed, int modes, std::vector<double> time_grid) {
    if (modes < 1) throw std::invalid_argument("BrownianPath: modes must be positive");
    if (time_grid.empty() || time_grid.front() != 0.0)
        throw std::invalid_argument("BrownianPath: time grid must start at 0");
    for (std::size_t j = 1; j < time_grid.size(); ++j)
        if (!(time_grid[j] > time_grid[j - 1]))
            throw std::invalid_argument("BrownianPath: time grid must be strictly increasing");

    BrownianPath p;
    p.seed_ = seed;
    p.modes_ = modes;
    p.time_grid_ = std::move(time_grid);
    const int n = p.steps();
    p.increments_.resize(static_cast<std::size_t>(modes) * n);
    for (int k = 0; k < modes; ++k)
        for (int j = 0; j < n; ++j) {
            const double dt = p.time_grid_[j + 1] - p.time_grid_[j];
            p.increments_[static_cast<std::size_t>(k) * n + j] =
                std::sqrt(dt) * counter_normal(seed, rng_stream::increments,
                                               static_cast<std::uint64_t>(k),
                                               static_cast<std::uint64_t>(j));
        }
    return p;
}

BrownianPath BrownianPath::sample_uniform(std::uint64_t seed, int modes, double t_end,
                                          int n_steps) {
    if (!(t_end > 0.0) || n_steps < 1)
        throw std::invalid_argument("BrownianPath: need t_end > 0 and n_steps >= 1");
    std::vector<double> grid(static_cast<std::size_t>(n_steps) + 1);
    for (int j = 0; j <= n_steps; ++j) grid[j] = t_end * j / n_steps;
    grid[0] = 0.0;
    grid[n_steps] = t_end;
    return sample(seed, modes, std::move(grid));
}

double BrownianPath::combined_increment(int step) const {
    if (modes_ == 1) return increments_[static_cast<std::size_t>(step)];
    double s = 0.0;
    for (int k = 0; k < modes_; ++k) s += increment(k, step);
    return s / std::sqrt(static_cast<double>(modes_));
}

std::vector<double> BrownianPath::cumulative(int mode) const {
    std::vector<double> w(time_grid_.size(), 0.0);
    for (int j = 0; j < steps(); ++j) w[j + 1] = w[j] + increment(mode, j);
    return w;
}

BrownianPath BrownianPath::refined() const {
    const int n = steps();
    if (n < 1) throw std::invalid_argument("BrownianPath::refined: no steps");
    const double dt0 = time_grid_[1] - time_grid_[0];
    for (int j = 1; j < n; ++j) {
        const double dt = time_grid_[j + 1] - time_grid_[j];
        if (std::abs(dt - dt0) > 1e-12 * dt0)
            throw std::invalid_argument("BrownianPath::refined: grid is not uniform");
    }

    BrownianPath p;
    p.seed_ = seed_;
    p.modes_ = modes_;
    p.level_ = level_ + 1;
    p.time_grid_.resize(2 * static_cast<std::size_t>(n) + 1);
    for (int j = 0; j < n; ++j) {
        p.time_grid_[2 * j] = time_grid_[j];
        p.time_grid_[2 * j + 1] = 0.5 * (time_grid_[j] + time_grid_[j + 1]);
    }
    p.time_grid_.back() = time_grid_.back();

    // Conditional midpoint: W_mid - W_left = dW/2 + xi with xi ~ N(0, dt/4).
    p.increments_.resize(static_cast<std::size_t>(modes_) * 2 * n);
    for (int k = 0; k < modes_; ++k)
        for (int j = 0; j < n; ++j) {
            const double dt = time_grid_[j + 1] - time_grid_[j];
            const double xi = 0.5 * std::sqrt(dt) *
                              counter_normal(seed_, rng_stream::bridge,
                                             static_cast<std::uint64_t>(k),
                                             static_cast<std::uint64_t>(j),
                                             static_cast<std::uint64_t>(p.level_));
            const double parent = increment(k, j);
            p.increments_[static_cast<std::size_t>(k) * 2 * n + 2 * j] = 0.5 * parent + xi;
            p.increments_[static_cast<std::size_t>(k) * 2 * n + 2 * j + 1] = 0.5 * parent - xi;
        }
    return p;
}

void write_path_csv(std::ostream& os, const BrownianPath& p) {
    os << "step,mode,increment\n";
    char buf[32];
    for (int j = 0; j < p.steps(); ++j)
        for (int k = 0; k < p.modes(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", p.increment(k, j));
            os << j << ',' << k << ',' << buf << '\n';
        }
}

void write_path_csv(const std::string& path, const BrownianPath& p) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_path_csv(os, p);
}

}  // namespace sbl
