#pragma once

#include <cmath>
#include <functional>
#include <string>

namespace sbl {

/// Multiplicative noise coefficient sigma(x, u) with sigma(x, 0) = 0.
///
/// With m modes the per-mode coefficients are sigma_k = sigma / sqrt(m), so
/// the total quadratic variation sum_k sigma_k^2 equals sigma^2 for every m
/// and the combined per-step increment is sigma * (sum_k dW_k) / sqrt(m).
class NoiseModel {
public:
    enum class Kind { zero, linear, sine, x_modulated, custom };

    static NoiseModel zero();
    /// sigma(u) = lambda * u
    static NoiseModel linear(double lambda, int modes = 1);
    /// sigma(u) = lambda * sin(u)
    static NoiseModel sine(double lambda, int modes = 1);
    /// sigma(x, u) = lambda * (1 + mu * sin x) * u   (x is the first coordinate)
    static NoiseModel x_modulated(double lambda, double mu, int modes = 1);
    /// Arbitrary coefficient with user-declared Lipschitz constants; not
    /// serializable, intended for assumption-validation experiments.
    static NoiseModel custom(std::function<double(double, double)> sigma, double lipschitz_u,
                             double lipschitz_x = 0.0, int modes = 1);

    Kind kind() const { return kind_; }
    std::string kind_name() const;

    double value(double x, double u) const {
        switch (kind_) {
            case Kind::zero: return 0.0;
            case Kind::linear: return lambda_ * u;
            case Kind::sine: return lambda_ * std::sin(u);
            case Kind::x_modulated: return lambda_ * (1.0 + mu_ * std::sin(x)) * u;
            case Kind::custom: return fn_(x, u);
        }
        return 0.0;
    }

    int modes() const { return modes_; }
    double mode_scale() const { return 1.0 / std::sqrt(static_cast<double>(modes_)); }

    bool is_zero() const { return kind_ == Kind::zero; }
    bool x_dependent() const { return kind_ == Kind::x_modulated || (kind_ == Kind::custom && lipschitz_x_ > 0.0); }
    /// True when sup_u |sigma(x,u)| is finite (needed for sup-norm perturbations).
    bool bounded_in_u() const { return kind_ == Kind::sine || kind_ == Kind::zero; }

    double lipschitz_u() const { return lipschitz_u_; }
    double lipschitz_x() const { return lipschitz_x_; }
    double lambda() const { return lambda_; }
    double mu() const { return mu_; }

private:
    NoiseModel() = default;

    Kind kind_ = Kind::zero;
    double lambda_ = 0.0;
    double mu_ = 0.0;
    int modes_ = 1;
    double lipschitz_u_ = 0.0;
    double lipschitz_x_ = 0.0;
    std::function<double(double, double)> fn_;
};

}  // namespace sbl
