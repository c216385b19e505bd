#pragma once

#include <string>

namespace sbl {

/// Spatial cutoff weight psi(x) >= 0 used in the weighted L^1 functionals.
///
/// Kinds:
///   one:               psi = 1
///   exponential(C0):   psi(x) = exp(-C0 |x|)
///   truncated(C0, R):  psi = 1 for |x| <= R, exp(-C0 (|x| - R)) beyond
///   section6(R):       W^{2,inf} cutoff equal to 1 on |x| <= R, a damped
///                      sine tail on R <= |x| <= R + pi, and 0 beyond
class WeightFunction {
public:
    enum class Kind { one, exponential, truncated, section6 };

    static WeightFunction one();
    static WeightFunction exponential(double c0);
    static WeightFunction truncated(double c0, double radius);
    static WeightFunction section6(double radius);

    Kind kind() const { return kind_; }
    std::string kind_name() const;
    double c0() const { return c0_; }
    double radius() const { return radius_; }

    /// psi at the point with Euclidean norm |x| = r (weights are radial).
    double value_radial(double r) const;

    /// psi(x) in one dimension (same as value_radial(|x|)).
    double operator()(double x) const;
    /// psi(x, y) in two dimensions.
    double operator()(double x, double y) const;

private:
    Kind kind_ = Kind::one;
    double c0_ = 0.0;
    double radius_ = 0.0;
};

struct WeightInequalityReport {
    bool holds = false;
    double max_gradient_ratio = 0.0;  // max |psi'| / psi over the region
    double max_laplacian_ratio = 0.0; // max |psi''| / psi over the region
};

/// Finite-difference check of |psi'| <= C0 psi and |psi''| <= C0 psi on
/// [region_lo, region_hi]. The region must stay clear of the zero set of
/// psi; touching it raises "degenerate region".
WeightInequalityReport check_weight_inequalities(const WeightFunction& w, double c0,
                                                 double region_lo, double region_hi,
                                                 int samples = 2001, double fd_step = 1e-3);

}  // namespace sbl
