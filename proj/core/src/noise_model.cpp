#include "sbl/noise_model.hpp"

#include <stdexcept>

namespace sbl {

namespace {
void require_modes(int m) {
    if (m < 1) throw std::invalid_argument("NoiseModel: modes must be positive");
}
}  // namespace

NoiseModel NoiseModel::zero() {
    NoiseModel n;
    n.kind_ = Kind::zero;
    return n;
}

NoiseModel NoiseModel::linear(double lambda, int modes) {
    require_modes(modes);
    NoiseModel n;
    n.kind_ = Kind::linear;
    n.lambda_ = lambda;
    n.modes_ = modes;
    n.lipschitz_u_ = std::abs(lambda);
    return n;
}

NoiseModel NoiseModel::sine(double lambda, int modes) {
    require_modes(modes);
    NoiseModel n;
    n.kind_ = Kind::sine;
    n.lambda_ = lambda;
    n.modes_ = modes;
    n.lipschitz_u_ = std::abs(lambda);
    return n;
}

NoiseModel NoiseModel::x_modulated(double lambda, double mu, int modes) {
    require_modes(modes);
    NoiseModel n;
    n.kind_ = Kind::x_modulated;
    n.lambda_ = lambda;
    n.mu_ = mu;
    n.modes_ = modes;
    n.lipschitz_u_ = std::abs(lambda) * (1.0 + std::abs(mu));
    n.lipschitz_x_ = std::abs(lambda * mu);
    return n;
}

NoiseModel NoiseModel::custom(std::function<double(double, double)> sigma, double lipschitz_u,
                              double lipschitz_x, int modes) {
    require_modes(modes);
    NoiseModel n;
    n.kind_ = Kind::custom;
    n.fn_ = std::move(sigma);
    n.modes_ = modes;
    n.lipschitz_u_ = lipschitz_u;
    n.lipschitz_x_ = lipschitz_x;
    return n;
}

std::string NoiseModel::kind_name() const {
    switch (kind_) {
        case Kind::zero: return "zero";
        case Kind::linear: return "linear";
        case Kind::sine: return "sine";
        case Kind::x_modulated: return "x_modulated";
        case Kind::custom: return "custom";
    }
    return "?";
}

}  // namespace sbl
