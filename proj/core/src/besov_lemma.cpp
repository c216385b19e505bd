#include "sbl/besov_lemma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "sbl/mollifier.hpp"

namespace sbl {

namespace {

double weighted_shift_l1(const SampledFunction& f, int k, const WeightFunction& psi) {
    // sum_i |f(i + k) - f(i)| psi(x_i) h over the sample window
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) acc += std::abs(f.at(i + k) - f.at(i)) * psi(f.x_at(i));
    return acc * f.h();
}

double weighted_symmetric_shift_l1(const SampledFunction& f, int k, const WeightFunction& psi) {
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) acc += std::abs(f.at(i + k) - f.at(i - k)) * psi(f.x_at(i));
    return acc * f.h();
}

}  // namespace

SampledFunction mollify(const SampledFunction& f, double delta) {
    if (!(delta >= 2.0 * f.h())) throw std::invalid_argument("mollify: kernel under-resolved");
    const DiscreteKernel kernel = sample_kernel_1d(0.5 * delta, f.h());
    std::vector<double> out(static_cast<std::size_t>(f.size()), 0.0);
    for (int i = 0; i < f.size(); ++i) {
        double acc = 0.0;
        for (int k = -kernel.radius_cells; k <= kernel.radius_cells; ++k)
            acc += kernel.weight(k) * f.at(i + k);
        out[static_cast<std::size_t>(i)] = acc;
    }
    return SampledFunction(f.x_lo(), f.h(), std::move(out), f.boundary(),
                           f.label() + "_mollified");
}

double modulus_omega(const SampledFunction& f, double delta, const WeightFunction& psi) {
    if (delta < 0.0) throw std::invalid_argument("modulus_omega: delta must be >= 0");
    const int kmax = static_cast<int>(std::floor(delta / f.h() * (1.0 + 1e-12)));
    double best = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        best = std::max(best, weighted_shift_l1(f, k, psi));
        best = std::max(best, weighted_shift_l1(f, -k, psi));
    }
    return best;
}

double symmetric_dual_pairing(const SampledFunction& f, double delta, const WeightFunction& psi) {
    if (!(delta >= 2.0 * f.h()))
        throw std::invalid_argument("symmetric_dual_pairing: kernel under-resolved");
    const DiscreteKernel kernel = sample_kernel_1d(delta, f.h());
    double total = 0.0;
    for (int k = -kernel.radius_cells; k <= kernel.radius_cells; ++k) {
        const double w = kernel.weight(k);
        if (w == 0.0) continue;
        total += w * weighted_symmetric_shift_l1(f, k, psi);
    }
    return total;
}

namespace {

void require_exponents(double r, double s) {
    if (!(r > 0.0 && r < s && s < 1.0))
        throw std::invalid_argument("lemma check: need 0 < r < s < 1");
}

DeltaRatioRow make_row(double delta, double lhs, double rhs) {
    DeltaRatioRow row;
    row.delta = delta;
    row.lhs = lhs;
    row.rhs = rhs;
    if (rhs > 0.0)
        row.ratio = lhs / rhs;
    else if (lhs == 0.0)
        row.ratio = 0.0;
    else
        throw std::runtime_error("lemma check: vanishing right-hand side with lhs > 0");
    return row;
}

}  // namespace

RatioReport check_sob_to_trans(const SampledFunction& f, const WeightFunction& psi, double r,
                               double s, const std::vector<double>& delta_grid) {
    require_exponents(r, s);
    RatioReport rep;
    rep.function_label = f.label();
    rep.inequality = "sob_to_trans";
    rep.r = r;
    rep.s = s;
    for (double delta : delta_grid) {
        if (!(delta >= 4.0 * f.h()))
            throw std::invalid_argument("check_sob_to_trans: delta below 4h");
        const double lhs = symmetric_dual_pairing(f, delta, psi);
        const int kmax = static_cast<int>(std::floor(delta / f.h() * (1.0 + 1e-12)));
        double sup = 0.0;
        for (int k = 1; k <= kmax; ++k) {
            const double z = k * f.h();
            sup = std::max(sup, std::pow(z, -s) * weighted_symmetric_shift_l1(f, k, psi));
        }
        const double rhs = std::pow(delta, r) * sup;
        rep.rows.push_back(make_row(delta, lhs, rhs));
        rep.max_ratio = std::max(rep.max_ratio, rep.rows.back().ratio);
    }
    return rep;
}

RatioReport check_trans_to_sob(const SampledFunction& f, const WeightFunction& psi, double r,
                               double s, const std::vector<double>& delta_grid) {
    require_exponents(r, s);
    RatioReport rep;
    rep.function_label = f.label();
    rep.inequality = "trans_to_sob";
    rep.r = r;
    rep.s = s;

    // sup over the dyadic grid {2^-k} intersected with [4h, 1]
    double inner_sup = 0.0;
    for (double dp = 1.0; dp >= 4.0 * f.h(); dp *= 0.5)
        inner_sup = std::max(inner_sup, std::pow(dp, -s) * symmetric_dual_pairing(f, dp, psi));
    const double l1 = f.l1_norm();

    for (double delta : delta_grid) {
        if (!(delta > 0.0 && delta <= 1.0))
            throw std::invalid_argument("check_trans_to_sob: delta must lie in (0, 1]");
        const double lhs = modulus_omega(f, delta, psi);
        const double rhs = std::pow(delta, r) * inner_sup + std::pow(delta, r) * l1;
        rep.rows.push_back(make_row(delta, lhs, rhs));
        rep.max_ratio = std::max(rep.max_ratio, rep.rows.back().ratio);
    }
    return rep;
}

void write_ratio_csv(std::ostream& os, const std::vector<RatioReport>& reports) {
    os << "function,inequality,r,s,delta,lhs,rhs,ratio\n";
    char buf[160];
    for (const auto& rep : reports)
        for (const auto& row : rep.rows) {
            std::snprintf(buf, sizeof buf, "%s,%s,%g,%g,%.17g,%.17g,%.17g,%.17g\n",
                          rep.function_label.c_str(), rep.inequality.c_str(), rep.r, rep.s,
                          row.delta, row.lhs, row.rhs, row.ratio);
            os << buf;
        }
}

}  // namespace sbl
