#include "sbl/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sbl {

EntropyApprox::EntropyApprox(double rho_) : rho(rho_) {
    if (!(rho > 0.0)) throw std::invalid_argument("EntropyApprox: rho must be > 0");
}

EtaRhoEval EntropyApprox::operator()(double r) const { return eta_rho(r, rho); }

EtaRhoEval eta_rho(double r, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("eta_rho: rho must be > 0");
    const double s = r / rho;
    const double a = std::abs(s);
    if (a >= 1.0) return {std::abs(r) - (5.0 / 16.0) * rho, s > 0.0 ? 1.0 : -1.0, 0.0};
    const double s2 = s * s;
    // eta_bar''(s) = (15/8)(1-s^2)^2 integrated twice from 0
    const double value = (15.0 / 8.0) * (s2 / 2.0 - s2 * s2 / 6.0 + s2 * s2 * s2 / 30.0);
    const double d1 = (15.0 / 8.0) * s * (1.0 - 2.0 * s2 / 3.0 + s2 * s2 / 5.0);
    const double d2 = (15.0 / 8.0) * (1.0 - s2) * (1.0 - s2);
    return {rho * value, d1, d2 / rho};
}

double kruzkov_flux(double u, double v, const FluxModel& flux) {
    if (u == v) return 0.0;
    const double sgn = u > v ? 1.0 : -1.0;
    return sgn * (flux.value(u) - flux.value(v));
}

namespace {

// Adaptive Simpson with kink-aware splitting.
struct Quadrature {
    double tol;
    int max_depth = 40;

    template <class F>
    double segment(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double eps, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (depth >= max_depth)
            throw std::runtime_error("entropy_flux_q: quadrature did not converge on [" +
                                     std::to_string(a) + ", " + std::to_string(b) + "]");
        if (std::abs(left + right - whole) <= 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return segment(f, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
               segment(f, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
    }

    template <class F>
    double integrate(const F& f, double a, double b) const {
        if (a == b) return 0.0;
        const double m = 0.5 * (a + b);
        const double fa = f(a), fm = f(m), fb = f(b);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return segment(f, a, b, fa, fm, fb, whole, tol, 0);
    }
};

// Integrates f over [lo, hi] splitting at interior kink points.
template <class F>
double integrate_with_kinks(const F& f, double lo, double hi, std::vector<double> kinks,
                            double tol) {
    kinks.push_back(lo);
    kinks.push_back(hi);
    std::sort(kinks.begin(), kinks.end());
    Quadrature q{tol};
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < kinks.size(); ++i) {
        const double a = std::max(lo, kinks[i]);
        const double b = std::min(hi, kinks[i + 1]);
        if (b > a) acc += q.integrate(f, a, b);
    }
    return acc;
}

}  // namespace

double entropy_flux_q(double u, double v, const FluxModel& flux, double rho, double abs_tol) {
    if (!(rho > 0.0)) throw std::invalid_argument("entropy_flux_q: rho must be > 0");
    if (u == v) return 0.0;
    const double lo = std::min(u, v), hi = std::max(u, v);
    const double sign = u >= v ? 1.0 : -1.0;
    auto integrand = [&](double xi) { return eta_rho(xi - v, rho).d1 * flux.derivative(xi); };
    return sign * integrate_with_kinks(integrand, lo, hi, {v - rho, v + rho}, abs_tol);
}

double entropy_flux_q_du(double u, double v, const FluxModel& flux, double rho) {
    return eta_rho(u - v, rho).d1 * flux.derivative(u);
}

double entropy_flux_q_swapped_du(double u, double v, const FluxModel& flux, double rho,
                                 double abs_tol) {
    if (u == v) return 0.0;
    const double lo = std::min(u, v), hi = std::max(u, v);
    const double sign = u >= v ? 1.0 : -1.0;
    auto integrand = [&](double xi) { return eta_rho(xi - u, rho).d2 * flux.derivative(xi); };
    return sign * integrate_with_kinks(integrand, lo, hi, {u - rho, u + rho}, abs_tol);
}

ResidualEntropy ResidualEntropy::kruzkov(double rho, double center) {
    if (!(rho > 0.0)) throw std::invalid_argument("ResidualEntropy::kruzkov: rho must be > 0");
    ResidualEntropy e;
    e.kind_ = Kind::kruzkov;
    e.rho_ = rho;
    e.center_ = center;
    return e;
}

ResidualEntropy ResidualEntropy::square() {
    ResidualEntropy e;
    e.kind_ = Kind::square;
    return e;
}

ResidualEntropy ResidualEntropy::linear() {
    ResidualEntropy e;
    e.kind_ = Kind::linear;
    return e;
}

std::string ResidualEntropy::label() const {
    switch (kind_) {
        case Kind::kruzkov:
            return "kruzkov(rho=" + std::to_string(rho_) + ",k=" + std::to_string(center_) + ")";
        case Kind::square: return "square";
        case Kind::linear: return "linear";
    }
    return "?";
}

double ResidualEntropy::value(double u) const {
    switch (kind_) {
        case Kind::kruzkov: return eta_rho(u - center_, rho_).value;
        case Kind::square: return u * u;
        case Kind::linear: return u;
    }
    return 0.0;
}

double ResidualEntropy::d1(double u) const {
    switch (kind_) {
        case Kind::kruzkov: return eta_rho(u - center_, rho_).d1;
        case Kind::square: return 2.0 * u;
        case Kind::linear: return 1.0;
    }
    return 0.0;
}

double ResidualEntropy::d2(double u) const {
    switch (kind_) {
        case Kind::kruzkov: return eta_rho(u - center_, rho_).d2;
        case Kind::square: return 2.0;
        case Kind::linear: return 0.0;
    }
    return 0.0;
}

namespace {

// Cumulative table of q(u) = int_c^u eta'(xi) f'(xi) dxi with cubic Hermite
// evaluation (q' = eta' f' is known exactly at the nodes).
class EntropyFluxTable {
public:
    EntropyFluxTable(const ResidualEntropy& eta, const FluxModel& flux, double lo, double hi) {
        double du_target = (hi - lo) / 1024.0;
        if (eta.kind() == ResidualEntropy::Kind::kruzkov)
            du_target = std::min(du_target, eta.rho() / 8.0);
        n_ = std::max(16, static_cast<int>(std::ceil((hi - lo) / du_target)));
        lo_ = lo;
        du_ = (hi - lo) / n_;
        q_.resize(static_cast<std::size_t>(n_) + 1);
        dq_.resize(static_cast<std::size_t>(n_) + 1);
        for (int i = 0; i <= n_; ++i) {
            const double x = lo_ + i * du_;
            dq_[static_cast<std::size_t>(i)] = eta.d1(x) * flux.derivative(x);
        }
        q_[0] = 0.0;
        for (int i = 0; i < n_; ++i) {
            const double x0 = lo_ + i * du_;
            const double xm = x0 + 0.5 * du_;
            const double gm = eta.d1(xm) * flux.derivative(xm);
            q_[static_cast<std::size_t>(i) + 1] =
                q_[static_cast<std::size_t>(i)] +
                du_ / 6.0 * (dq_[static_cast<std::size_t>(i)] + 4.0 * gm +
                             dq_[static_cast<std::size_t>(i) + 1]);
        }
    }

    double operator()(double u) const {
        double s = (u - lo_) / du_;
        int i = static_cast<int>(s);
        i = std::clamp(i, 0, n_ - 1);
        const double t = s - i;
        const double q0 = q_[static_cast<std::size_t>(i)], q1 = q_[static_cast<std::size_t>(i) + 1];
        const double m0 = dq_[static_cast<std::size_t>(i)] * du_, m1 = dq_[static_cast<std::size_t>(i) + 1] * du_;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * q0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * q1 +
               (t3 - t2) * m1;
    }

private:
    int n_ = 0;
    double lo_ = 0.0, du_ = 0.0;
    std::vector<double> q_, dq_;
};

}  // namespace

double entropy_residual(const Trajectory& traj, const ResidualEntropy& eta, const Field& phi,
                        double s, double t) {
    if (!(s < t)) throw std::invalid_argument("entropy_residual: need s < t");
    if (traj.snapshots.size() < 2)
        throw std::invalid_argument("entropy_residual: trajectory needs dense snapshots");
    for (double v : phi.values())
        if (v < 0.0) throw std::invalid_argument("entropy_residual: phi must be nonnegative");

    const Grid& g = traj.snapshots.front().field.grid();
    if (phi.grid() != g) throw std::invalid_argument("entropy_residual: phi grid mismatch");

    // snapshot sub-range covering [s, t]
    std::size_t is = 0, it = traj.snapshots.size() - 1;
    while (is + 1 < traj.snapshots.size() && traj.snapshots[is].time < s - 1e-12) ++is;
    while (it > 0 && traj.snapshots[it].time > t + 1e-12) --it;
    if (it <= is) throw std::invalid_argument("entropy_residual: [s,t] spans no snapshots");

    // combined-increment cumulative sums on the consumed path
    std::vector<double> wc(traj.path.time_grid().size(), 0.0);
    for (int j = 0; j < traj.path.steps(); ++j) wc[static_cast<std::size_t>(j) + 1] = wc[static_cast<std::size_t>(j)] + traj.path.combined_increment(j);

    // value range for the flux table
    double lo = traj.snapshots[is].field.min_value(), hi = traj.snapshots[is].field.max_value();
    for (std::size_t i = is; i <= it; ++i) {
        lo = std::min(lo, traj.snapshots[i].field.min_value());
        hi = std::max(hi, traj.snapshots[i].field.max_value());
    }
    const double pad = 1e-6 + 1e-3 * (hi - lo);
    const EntropyFluxTable q(eta, traj.problem.flux, lo - pad, hi + pad);

    // sum over axes of the centered gradient of phi
    const double vol = g.cell_volume();
    std::vector<double> gphi(static_cast<std::size_t>(g.total_cells()), 0.0);
    if (g.dim() == 1) {
        const int n = g.cells(0);
        const double h = g.spacing(0);
        for (int i = 0; i < n; ++i)
            gphi[static_cast<std::size_t>(i)] =
                (phi[g.wrap(0, i + 1)] - phi[g.wrap(0, i - 1)]) / (2.0 * h);
    } else {
        for (int j = 0; j < g.cells(1); ++j)
            for (int i = 0; i < g.cells(0); ++i)
                gphi[static_cast<std::size_t>(g.index(i, j))] =
                    (phi[g.index(g.wrap(0, i + 1), j)] - phi[g.index(g.wrap(0, i - 1), j)]) /
                        (2.0 * g.spacing(0)) +
                    (phi[g.index(i, g.wrap(1, j + 1))] - phi[g.index(i, g.wrap(1, j - 1))]) /
                        (2.0 * g.spacing(1));
    }

    const auto& noise = traj.problem.noise;
    auto sigma_at = [&](std::int64_t idx, double u) {
        if (noise.is_zero()) return 0.0;
        if (!noise.x_dependent()) return noise.value(0.0, u);
        if (g.dim() == 1) return noise.value(g.cell_center(0, static_cast<int>(idx)), u);
        const int i = static_cast<int>(idx % g.cells(0));
        return noise.value(g.cell_center(0, i), u);
    };

    double flux_term = 0.0, ito_term = 0.0, mart_term = 0.0;
    for (std::size_t i = is; i < it; ++i) {
        const auto& snap = traj.snapshots[i];
        const double dtau = traj.snapshots[i + 1].time - snap.time;
        const double dw = wc[static_cast<std::size_t>(traj.snapshots[i + 1].node)] -
                          wc[static_cast<std::size_t>(snap.node)];
        double fsum = 0.0, isum = 0.0, msum = 0.0;
        const auto& u = snap.field;
        for (std::int64_t c = 0; c < u.size(); ++c) {
            const double uc = u[c];
            fsum += q(uc) * gphi[static_cast<std::size_t>(c)];
            if (!noise.is_zero()) {
                const double sg = sigma_at(c, uc);
                const double ph = phi[c];
                isum += 0.5 * eta.d2(uc) * sg * sg * ph;
                msum += eta.d1(uc) * sg * ph;
            }
        }
        flux_term += dtau * fsum * vol;
        ito_term += dtau * isum * vol;
        mart_term += dw * msum * vol;
    }

    double boundary = 0.0;
    {
        const auto& u0 = traj.snapshots[is].field;
        const auto& u1 = traj.snapshots[it].field;
        double acc = 0.0;
        for (std::int64_t c = 0; c < u0.size(); ++c)
            acc += (eta.value(u1[c]) - eta.value(u0[c])) * phi[c];
        boundary = acc * vol;
    }

    return -boundary + flux_term + ito_term + mart_term;
}

Field make_test_bump(const Grid& grid, double center_fraction, double width_fraction,
                     double height) {
    if (!(width_fraction > 0.0) || width_fraction > 0.5)
        throw std::invalid_argument("make_test_bump: width fraction in (0, 1/2]");
    Field phi(grid);
    const double cx = center_fraction * grid.length(0);
    const double w = width_fraction * grid.length(0);
    const double L = grid.length(0);
    for (int i = 0; i < grid.cells(0); ++i) {
        double r = std::abs(grid.cell_center(0, i) - cx);
        r = std::min(r, L - r);  // periodic distance
        const double sr = r / w;
        const double v = sr * sr >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - sr * sr));
        if (grid.dim() == 1) {
            phi[i] = height * v;
        } else {
            for (int j = 0; j < grid.cells(1); ++j) phi[grid.index(i, j)] = height * v;
        }
    }
    return phi;
}

}  // namespace sbl
