#pragma once

#include <string>
#include <vector>

#include "sbl/field.hpp"
#include "sbl/flux_model.hpp"
#include "sbl/grid.hpp"
#include "sbl/noise_model.hpp"

namespace sbl {

/// Built-in initial data generators, sampled at cell centers.
class InitialData {
public:
    enum class Kind { smooth_bump, riemann, sine, table };

    /// C-infinity bump of the given height and half-width, centered at the
    /// domain midpoint (radially in 2-D).
    static InitialData smooth_bump(double height = 1.0, double width_fraction = 0.25);
    /// left value on the first `split` fraction of the first axis, right value
    /// on the rest (two jumps on the torus).
    static InitialData riemann(double left, double right, double split = 0.5);
    static InitialData sine(double amplitude = 1.0, double offset = 0.0, int periods = 1);
    /// Explicit per-cell samples (1-D only; length must match the grid).
    static InitialData table(std::vector<double> values);

    Kind kind() const { return kind_; }
    std::string kind_name() const;

    Field sample(const Grid& grid) const;

    double height() const { return a_; }
    double width_fraction() const { return b_; }
    double left() const { return a_; }
    double right() const { return b_; }
    double split() const { return c_; }
    double amplitude() const { return a_; }
    double offset() const { return b_; }
    int periods() const { return periods_; }
    const std::vector<double>& values() const { return values_; }

private:
    Kind kind_ = Kind::smooth_bump;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0;
    int periods_ = 1;
    std::vector<double> values_;
};

/// One instance of the viscous stochastic balance law: flux f, noise sigma,
/// viscosity epsilon, initial data and time horizon.
struct Problem {
    FluxModel flux = FluxModel::burgers();
    NoiseModel noise = NoiseModel::zero();
    double viscosity = 0.0;
    InitialData initial = InitialData::smooth_bump();
    double horizon = 1.0;

    void validate_basic() const;
};

}  // namespace sbl
