#pragma once

#include <string>
#include <vector>

namespace sbl {

/// Scalar flux profile f: R -> R, applied identically on every axis, so the
/// d-dimensional flux is f(u) = (f(u), ..., f(u)).
///
/// growth_exponent / growth_constant declare the polynomial growth bound
/// |f(u)| <= C (1 + |u|^r); lipschitz_fprime and bound_fsecond declare
/// sup|f'| and sup|f''| on the working range. For the built-in kinds these
/// are filled in by the factory functions.
class FluxModel {
public:
    enum class Kind { burgers, linear, polynomial, table };

    static FluxModel burgers(double working_radius = 10.0);
    static FluxModel linear(double speed);
    /// coeffs[k] multiplies u^k.
    static FluxModel polynomial(std::vector<double> coeffs, double working_radius = 10.0);
    /// Piecewise-linear profile through (u_k, f_k); u strictly increasing.
    static FluxModel table(std::vector<double> u, std::vector<double> f);

    Kind kind() const { return kind_; }
    std::string kind_name() const;

    double value(double u) const;
    double derivative(double u) const;
    double second_derivative(double u) const;

    /// sup of |f'| over [lo, hi], exact for the built-in kinds.
    double max_abs_derivative(double lo, double hi) const;

    int growth_exponent() const { return growth_exponent_; }
    double growth_constant() const { return growth_constant_; }
    double lipschitz_fprime() const { return lipschitz_fprime_; }
    double bound_fsecond() const { return bound_fsecond_; }

    double linear_speed() const { return a_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

private:
    FluxModel() = default;

    Kind kind_ = Kind::burgers;
    double a_ = 0.0;                  // linear kind
    std::vector<double> coeffs_;      // polynomial kind
    std::vector<double> table_u_, table_f_;

    int growth_exponent_ = 0;
    double growth_constant_ = 0.0;
    double lipschitz_fprime_ = 0.0;
    double bound_fsecond_ = 0.0;
};

}  // namespace sbl
