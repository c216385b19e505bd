#include "sbl/mollifier.hpp"

#include <cmath>
#include <stdexcept>

namespace sbl {

double standard_bump(double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(1.0 / (s2 - 1.0));
}

double standard_bump_norm_1d() {
    // composite Simpson; the integrand is smooth and vanishes flat at +-1
    static const double value = [] {
        const int n = 1 << 14;
        double acc = 0.0;
        const double h = 2.0 / n;
        for (int i = 0; i < n; ++i) {
            const double a = -1.0 + i * h;
            acc += h / 6.0 *
                   (standard_bump(a) + 4.0 * standard_bump(a + 0.5 * h) + standard_bump(a + h));
        }
        return 1.0 / acc;
    }();
    return value;
}

DiscreteKernel sample_kernel_1d(double radius, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("sample_kernel_1d: h must be > 0");
    if (radius < h) throw std::invalid_argument("kernel under-resolved");
    DiscreteKernel k;
    k.radius_cells = static_cast<int>(std::floor(radius / h));
    k.weights.resize(2 * static_cast<std::size_t>(k.radius_cells) + 1);
    double sum = 0.0;
    for (int j = -k.radius_cells; j <= k.radius_cells; ++j) {
        const double w = standard_bump(j * h / radius);
        k.weights[static_cast<std::size_t>(j + k.radius_cells)] = w;
        sum += w;
    }
    for (auto& w : k.weights) w /= sum;
    return k;
}

}  // namespace sbl
