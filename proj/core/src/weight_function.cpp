#include "sbl/weight_function.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sbl {

WeightFunction WeightFunction::one() {
    WeightFunction w;
    w.kind_ = Kind::one;
    return w;
}

WeightFunction WeightFunction::exponential(double c0) {
    if (!(c0 > 0.0)) throw std::invalid_argument("WeightFunction::exponential: C0 must be > 0");
    WeightFunction w;
    w.kind_ = Kind::exponential;
    w.c0_ = c0;
    return w;
}

WeightFunction WeightFunction::truncated(double c0, double radius) {
    if (!(c0 > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("WeightFunction::truncated: C0 and R must be > 0");
    WeightFunction w;
    w.kind_ = Kind::truncated;
    w.c0_ = c0;
    w.radius_ = radius;
    return w;
}

WeightFunction WeightFunction::section6(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("WeightFunction::section6: R must be > 0");
    WeightFunction w;
    w.kind_ = Kind::section6;
    w.radius_ = radius;
    return w;
}

std::string WeightFunction::kind_name() const {
    switch (kind_) {
        case Kind::one: return "one";
        case Kind::exponential: return "exponential";
        case Kind::truncated: return "truncated";
        case Kind::section6: return "section6";
    }
    return "?";
}

double WeightFunction::value_radial(double r) const {
    r = std::abs(r);
    switch (kind_) {
        case Kind::one:
            return 1.0;
        case Kind::exponential:
            return std::exp(-c0_ * r);
        case Kind::truncated:
            return r <= radius_ ? 1.0 : std::exp(-c0_ * (r - radius_));
        case Kind::section6: {
            constexpr double pi = std::numbers::pi;
            if (r <= radius_) return 1.0;
            if (r >= radius_ + pi) return 0.0;
            const double t = r - radius_;
            const double norm = std::exp(pi) + 1.0;
            return (std::sqrt(2.0) * std::exp(pi - t) * std::sin(t + pi / 4.0) + 1.0) / norm;
        }
    }
    return 0.0;
}

double WeightFunction::operator()(double x) const { return value_radial(x); }

double WeightFunction::operator()(double x, double y) const {
    return value_radial(std::hypot(x, y));
}

WeightInequalityReport check_weight_inequalities(const WeightFunction& w, double c0,
                                                 double region_lo, double region_hi,
                                                 int samples, double fd_step) {
    if (!(region_lo < region_hi))
        throw std::invalid_argument("check_weight_inequalities: empty region");
    if (samples < 2) throw std::invalid_argument("check_weight_inequalities: need >= 2 samples");

    WeightInequalityReport rep;
    const double h = fd_step;
    for (int i = 0; i < samples; ++i) {
        const double x = region_lo + (region_hi - region_lo) * i / (samples - 1);
        const double p = w(x);
        if (!(p > 0.0)) throw std::invalid_argument("check_weight_inequalities: degenerate region");
        const double pm = w(x - h);
        const double pp = w(x + h);
        const double d1 = (pp - pm) / (2.0 * h);
        const double d2 = (pp - 2.0 * p + pm) / (h * h);
        rep.max_gradient_ratio = std::max(rep.max_gradient_ratio, std::abs(d1) / p);
        rep.max_laplacian_ratio = std::max(rep.max_laplacian_ratio, std::abs(d2) / p);
    }
    rep.holds = rep.max_gradient_ratio <= c0 && rep.max_laplacian_ratio <= c0;
    return rep;
}

}  // namespace sbl
