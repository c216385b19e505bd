#include "sbl/sampled_function.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sbl/mollifier.hpp"
#include "sbl/rng.hpp"

namespace sbl {

SampledFunction::SampledFunction(double x_lo, double h, std::vector<double> samples,
                                 Boundary boundary, std::string label)
    : x_lo_(x_lo), h_(h), samples_(std::move(samples)), boundary_(boundary),
      label_(std::move(label)) {
    if (!(h > 0.0)) throw std::invalid_argument("SampledFunction: h must be > 0");
    if (samples_.empty()) throw std::invalid_argument("SampledFunction: empty samples");
    for (double v : samples_)
        if (!std::isfinite(v)) throw std::invalid_argument("SampledFunction: non-finite sample");
}

double SampledFunction::l1_norm() const {
    double acc = 0.0;
    for (double v : samples_) acc += std::abs(v);
    return acc * h_;
}

namespace {

constexpr double kDomainLo = -2.0;
constexpr double kDomainHi = 2.0;

template <class F>
SampledFunction sample_closed_form(int n, const F& f, const std::string& label) {
    if (n < 8) throw std::invalid_argument("corpus: need >= 8 samples");
    const double h = (kDomainHi - kDomainLo) / n;
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = f(kDomainLo + (i + 0.5) * h);
    return SampledFunction(kDomainLo, h, std::move(v), SampledFunction::Boundary::zero_extended,
                           label);
}

// smooth envelope: 1 on |x| <= 1, falls to 0 at |x| = 1.5
double envelope(double x) {
    const double a = std::abs(x);
    if (a <= 1.0) return 1.0;
    if (a >= 1.5) return 0.0;
    const double s = (a - 1.0) / 0.5;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

}  // namespace

SampledFunction make_step_function(int n) {
    return sample_closed_form(
        n, [](double x) { return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0; }, "step");
}

SampledFunction make_tent_function(int n) {
    return sample_closed_form(
        n, [](double x) { return std::max(0.0, 1.0 - std::abs(x)); }, "tent");
}

SampledFunction make_hoelder_function(int n, double alpha, int terms) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("make_hoelder_function: alpha in (0,1)");
    return sample_closed_form(
        n,
        [alpha, terms](double x) {
            double acc = 0.0;
            for (int k = 0; k < terms; ++k)
                acc += std::pow(2.0, -alpha * k) *
                       std::cos(std::pow(2.0, k) * std::numbers::pi * x + 0.7 * k);
            return acc * envelope(x);
        },
        "hoelder");
}

SampledFunction make_mollified_noise_function(int n, std::uint64_t seed, double mollify_width) {
    // underlying function: seeded piecewise-constant noise on a fixed
    // lattice over [-1.5, 1.5], so finer sampling refines the same function
    constexpr int kBase = 256;
    auto base_value = [&](double x) {
        if (x < -1.5 || x >= 1.5) return 0.0;
        const int cell = static_cast<int>((x + 1.5) / 3.0 * kBase);
        return 2.0 * counter_uniform(seed, rng_stream::corpus, static_cast<std::uint64_t>(cell)) -
               1.0;
    };
    const double h = (kDomainHi - kDomainLo) / n;
    // continuum convolution with the bump kernel, evaluated by quadrature,
    // keeps the function independent of n
    const double c1 = standard_bump_norm_1d();
    const double r = mollify_width;
    std::vector<double> v(static_cast<std::size_t>(n));
    const int q = 64;
    for (int i = 0; i < n; ++i) {
        const double x = kDomainLo + (i + 0.5) * h;
        double acc = 0.0;
        for (int j = 0; j < q; ++j) {
            const double z = -r + (2.0 * r) * (j + 0.5) / q;
            acc += standard_bump(z / r) / r * c1 * base_value(x + z) * (2.0 * r / q);
        }
        v[static_cast<std::size_t>(i)] = acc;
    }
    return SampledFunction(kDomainLo, h, std::move(v), SampledFunction::Boundary::zero_extended,
                           "mollified_noise");
}

SampledFunction make_constant_function(int n, double value) {
    // periodic, so translations are exact and every difference vanishes
    if (n < 8) throw std::invalid_argument("corpus: need >= 8 samples");
    const double h = (kDomainHi - kDomainLo) / n;
    return SampledFunction(kDomainLo, h, std::vector<double>(static_cast<std::size_t>(n), value),
                           SampledFunction::Boundary::periodic, "constant");
}

}  // namespace sbl
