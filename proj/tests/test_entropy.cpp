#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sbl/entropy.hpp"
#include "sbl/estimators.hpp"
#include "sbl/rng.hpp"
#include "sbl/solver.hpp"

using namespace sbl;

namespace {

// independent reconstruction of the entropy profile: integrate
// eta_bar''(s) = (15/8)(1-s^2)^2 twice with a fine trapezoid rule
struct ProfileOracle {
    std::vector<double> s, d1, val;
    ProfileOracle() {
        const int n = 200000;
        s.resize(n + 1);
        d1.resize(n + 1);
        val.resize(n + 1);
        const double h = 1.0 / n;
        for (int i = 0; i <= n; ++i) s[i] = i * h;
        auto d2 = [](double x) { return 15.0 / 8.0 * (1 - x * x) * (1 - x * x); };
        for (int i = 1; i <= n; ++i) {
            d1[i] = d1[i - 1] + 0.5 * h * (d2(s[i - 1]) + d2(s[i]));
            val[i] = val[i - 1] + 0.5 * h * (d1[i - 1] + d1[i]);
        }
    }
    double value_at(double x) const {
        const int i = std::min(static_cast<int>(std::abs(x) * 200000), 200000);
        return val[i];
    }
    double d1_at(double x) const {
        const int i = std::min(static_cast<int>(std::abs(x) * 200000), 200000);
        return (x < 0 ? -1.0 : 1.0) * d1[i];
    }
};

Problem make_problem(FluxModel flux, NoiseModel noise, double eps, InitialData init, double T) {
    Problem p;
    p.flux = flux;
    p.noise = noise;
    p.viscosity = eps;
    p.initial = init;
    p.horizon = T;
    return p;
}

}  // namespace

TEST_CASE("eta_rho closed form against the double-integration oracle") {
    const ProfileOracle oracle;
    for (double s : {0.0, 0.1, 0.37, 0.5, 0.82, 0.99, 1.0}) {
        const auto e = eta_rho(s, 1.0);
        CHECK(e.value == doctest::Approx(oracle.value_at(s)).epsilon(1e-8));
        CHECK(e.d1 == doctest::Approx(oracle.d1_at(s)).epsilon(1e-8));
    }
    // scaling: eta_rho(r) = rho * eta_bar(r / rho)
    for (double rho : {0.01, 0.5, 3.0}) {
        CHECK(eta_rho(0.0, rho).value == 0.0);
        const double r = 0.6 * rho;
        CHECK(eta_rho(r, rho).value == doctest::Approx(rho * oracle.value_at(0.6)).epsilon(1e-8));
    }
}

TEST_CASE("eta_rho outside the kink equals |r| - (5/16) rho; constants are exact") {
    for (double rho : {1e-3, 0.2, 1.0, 4.0})
        for (double r : {1.0 * rho, 1.5 * rho, 10.0 * rho, -2.0 * rho}) {
            const auto e = eta_rho(r, rho);
            CHECK(e.value == doctest::Approx(std::abs(r) - 5.0 / 16.0 * rho).epsilon(1e-12));
            CHECK(std::abs(e.d1) == 1.0);
            CHECK(e.d2 == 0.0);
        }
    CHECK(EntropyApprox::M1 == 5.0 / 16.0);
    CHECK(EntropyApprox::M2 == 15.0 / 8.0);
    CHECK_THROWS_AS(eta_rho(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("sandwich |r| - M1 rho <= eta_rho(r) <= |r| on random samples") {
    for (int i = 0; i < 100000; ++i) {
        const std::uint64_t k = static_cast<std::uint64_t>(i);
        const double r = 8.0 * (counter_uniform(21, rng_stream::validation, k, 0) - 0.5);
        const double rho = 1e-4 + 3.0 * counter_uniform(21, rng_stream::validation, k, 1);
        const auto e = eta_rho(r, rho);
        CHECK(e.value <= std::abs(r) + 1e-14);
        CHECK(e.value >= std::abs(r) - EntropyApprox::M1 * rho - 1e-14);
        const double d2bound = std::abs(r) < rho ? EntropyApprox::M2 / rho : 0.0;
        CHECK(std::abs(e.d2) <= d2bound + 1e-14);
    }
}

TEST_CASE("C2 continuity at the matching points") {
    for (double rho : {1e-3, 0.1, 1.0, 5.0}) {
        const auto in = eta_rho(rho * (1 - 1e-12), rho);
        const auto out = eta_rho(rho * (1 + 1e-12), rho);
        CHECK(std::abs(in.value - out.value) <= 1e-12 * std::max(1.0, rho));
        CHECK(std::abs(in.d1 - out.d1) <= 1e-11);
        CHECK(std::abs(in.d2 - out.d2) * rho <= 1e-11);
    }
}

TEST_CASE("kruzkov flux values and exchange symmetry") {
    const FluxModel burgers = FluxModel::burgers();
    CHECK(kruzkov_flux(0.7, 0.7, burgers) == 0.0);
    CHECK(kruzkov_flux(1.0, 0.0, burgers) == doctest::Approx(0.5));
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t k = static_cast<std::uint64_t>(i);
        const double u = 6.0 * (counter_uniform(31, rng_stream::validation, k, 0) - 0.5);
        const double v = 6.0 * (counter_uniform(31, rng_stream::validation, k, 1) - 0.5);
        CHECK(kruzkov_flux(u, v, burgers) ==
              doctest::Approx(kruzkov_flux(v, u, burgers)).epsilon(1e-13));
    }
}

TEST_CASE("entropy flux quadrature: limits, oracle, convergence rate") {
    const FluxModel burgers = FluxModel::burgers();
    CHECK(entropy_flux_q(0.4, 0.4, burgers, 0.1) == 0.0);
    CHECK(entropy_flux_q(1.0, 0.0, burgers, 1e-4) == doctest::Approx(0.5).epsilon(1e-3));

    SUBCASE("agrees with an independent fine composite-Simpson oracle") {
        const double u = 1.3, v = -0.4, rho = 0.6;
        const int n = 1 << 16;
        double acc = 0.0;
        const double lo = v, hi = u, h = (hi - lo) / n;
        for (int i = 0; i < n; ++i) {
            const double a = lo + i * h, b = a + h, m = a + 0.5 * h;
            auto f = [&](double xi) { return eta_rho(xi - v, rho).d1 * burgers.derivative(xi); };
            acc += h / 6.0 * (f(a) + 4.0 * f(m) + f(b));
        }
        CHECK(entropy_flux_q(u, v, burgers, rho) == doctest::Approx(acc).epsilon(1e-9));
    }

    SUBCASE("sup distance to the Kruzkov flux shrinks like O(rho)") {
        auto sup_gap = [&](double rho) {
            double worst = 0.0;
            for (double u = -1.0; u <= 1.0; u += 0.25)
                for (double v = -1.0; v <= 1.0; v += 0.25)
                    worst = std::max(worst, std::abs(entropy_flux_q(u, v, burgers, rho) -
                                                     kruzkov_flux(u, v, burgers)));
            return worst;
        };
        const double g1 = sup_gap(0.2), g2 = sup_gap(0.1);
        CHECK(g1 / g2 > 1.5);
        CHECK(g1 / g2 < 3.0);
    }
}

TEST_CASE("antisymmetry defect of the entropy flux obeys the rho bound") {
    const FluxModel burgers = FluxModel::burgers();

    SUBCASE("quadrature route agrees with a finite-difference derivative") {
        const double u = 0.8, v = 0.3, rho = 0.5, d = 1e-5;
        const double fd =
            (entropy_flux_q(v, u + d, burgers, rho) - entropy_flux_q(v, u - d, burgers, rho)) /
            (2.0 * d);
        CHECK(entropy_flux_q_swapped_du(u, v, burgers, rho) ==
              doctest::Approx(fd).epsilon(1e-5));
    }

    SUBCASE("|d/du (q(u,v) - q(v,u))| <= (M2/2) ||f''|| rho on a grid") {
        for (double rho : {0.5, 0.1, 0.02})
            for (double u = -2.0; u <= 2.0; u += 0.5)
                for (double v = -2.0; v <= 2.0; v += 0.5) {
                    const double d = entropy_flux_q_du(u, v, burgers, rho) -
                                     entropy_flux_q_swapped_du(u, v, burgers, rho);
                    CHECK(std::abs(d) <=
                          0.5 * EntropyApprox::M2 * burgers.bound_fsecond() * rho + 1e-8);
                }
    }
}

TEST_CASE("entropy residual: linear entropy reduces to conservation") {
    const Grid g = Grid::make_1d(128, 1.0);
    const Problem p = make_problem(FluxModel::burgers(), NoiseModel::zero(), 0.0,
                                   InitialData::smooth_bump(1.0, 0.25), 0.4);
    const auto path = BrownianPath::sample_uniform(1, 1, 0.4, 64);
    SolverConfig cfg;
    cfg.record_every_step = true;
    const Trajectory t = solve(p, g, path, cfg);
    const Field phi = make_test_bump(g, 0.5, 0.3);
    const double r = entropy_residual(t, ResidualEntropy::linear(), phi, 0.1, 0.3);
    CHECK(std::abs(r) < 5.0 * g.spacing(0));
}

TEST_CASE("entropy residual: smooth advection residual shrinks with resolution") {
    auto residual_at = [](int n) {
        const Grid g = Grid::make_1d(n, 1.0);
        const Problem p = make_problem(FluxModel::linear(1.0), NoiseModel::zero(), 0.0,
                                       InitialData::sine(0.3, 0.6), 0.25);
        const auto path = BrownianPath::sample_uniform(1, 1, 0.25, 32);
        SolverConfig cfg;
        cfg.record_every_step = true;
        const Trajectory t = solve(p, g, path, cfg);
        const Field phi = make_test_bump(g, 0.5, 0.3);
        return std::abs(
            entropy_residual(t, ResidualEntropy::kruzkov(0.1, 0.5), phi, 0.05, 0.2));
    };
    const double r128 = residual_at(128);
    const double r256 = residual_at(256);
    CHECK(r128 < 0.05);
    CHECK(r256 < r128);
}

TEST_CASE("entropy residual: shocks produce strictly positive values") {
    const Grid g = Grid::make_1d(256, 1.0);
    const Problem p = make_problem(FluxModel::burgers(), NoiseModel::zero(), 0.0,
                                   InitialData::riemann(1.0, 0.0, 0.5), 0.5);
    const auto path = BrownianPath::sample_uniform(1, 1, 0.5, 64);
    SolverConfig cfg;
    cfg.record_every_step = true;
    const Trajectory t = solve(p, g, path, cfg);
    const Field phi = make_test_bump(g, 0.625, 0.15);
    const double r =
        entropy_residual(t, ResidualEntropy::kruzkov(0.05, 0.5), phi, 0.125, 0.375);
    CHECK(r > 0.01);
}

TEST_CASE("entropy residual: stochastic means stay above -3 stderr - O(h)") {
    const Grid g = Grid::make_1d(128, 1.0);
    const Problem p = make_problem(FluxModel::burgers(), NoiseModel::linear(0.3), 0.02,
                                   InitialData::smooth_bump(1.0, 0.25), 0.4);
    const Field phi = make_test_bump(g, 0.5, 0.25);
    const std::vector<ResidualEntropy> etas = {ResidualEntropy::kruzkov(0.1, 0.0),
                                               ResidualEntropy::square(),
                                               ResidualEntropy::linear()};
    for (const auto& eta : etas) {
        const auto rep = mc_expectation(
            "resid", 200, 7000,
            [&](std::uint64_t seed, int) {
                const auto path = BrownianPath::sample_uniform(seed, 1, 0.4, 64);
                SolverConfig cfg;
                cfg.record_every_step = true;
                const Trajectory t = solve(p, g, path, cfg);
                return entropy_residual(t, eta, phi, 0.1, 0.3);
            });
        CHECK(rep.mean >= -3.0 * rep.stderr_mean - 5.0 * g.spacing(0));
    }
}

TEST_CASE("residual rejects bad inputs") {
    const Grid g = Grid::make_1d(32, 1.0);
    const Problem p = make_problem(FluxModel::burgers(), NoiseModel::zero(), 0.0,
                                   InitialData::sine(0.5, 0.0), 0.2);
    const auto path = BrownianPath::sample_uniform(1, 1, 0.2, 16);
    SolverConfig cfg;
    cfg.record_every_step = true;
    const Trajectory t = solve(p, g, path, cfg);
    Field phi = make_test_bump(g, 0.5, 0.3);
    phi[3] = -0.1;
    CHECK_THROWS_AS(entropy_residual(t, ResidualEntropy::square(), phi, 0.05, 0.15),
                    std::invalid_argument);
    const Field ok = make_test_bump(g, 0.5, 0.3);
    CHECK_THROWS_AS(entropy_residual(t, ResidualEntropy::square(), ok, 0.15, 0.05),
                    std::invalid_argument);
}
