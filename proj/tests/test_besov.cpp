#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "sbl/besov_lemma.hpp"
#include "sbl/mollifier.hpp"
#include "sbl/rng.hpp"

using namespace sbl;

namespace {

double discrete_mass(const SampledFunction& f) {
    double acc = 0.0;
    for (double v : f.samples()) acc += v;
    return acc * f.h();
}

}  // namespace

TEST_CASE("mollification basics") {
    const WeightFunction one = WeightFunction::one();

    SUBCASE("constants are reproduced exactly") {
        const auto c = make_constant_function(256, 1.7);
        const auto m = mollify(c, 16 * c.h());
        for (int i = 0; i < m.size(); ++i) CHECK(m.samples()[static_cast<std::size_t>(i)] == doctest::Approx(1.7).epsilon(1e-15));
    }
    SUBCASE("discrete mass is preserved") {
        const int n = 512;
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i)
            v[static_cast<std::size_t>(i)] =
                counter_uniform(3, rng_stream::corpus, static_cast<std::uint64_t>(i)) - 0.3;
        const SampledFunction f(-2.0, 4.0 / n, v, SampledFunction::Boundary::periodic, "noise");
        const auto m = mollify(f, 24 * f.h());
        CHECK(discrete_mass(m) == doctest::Approx(discrete_mass(f)).epsilon(1e-12));
    }
    SUBCASE("step profile matches a high-resolution quadrature oracle") {
        const int n = 2048;
        const auto f = make_step_function(n);
        const double delta = 32 * f.h();
        const auto m = mollify(f, delta);
        // continuum oracle: (J_{delta/2} * step)(x) by fine quadrature
        const double c1 = standard_bump_norm_1d();
        const double r = 0.5 * delta;
        auto oracle = [&](double x) {
            const int q = 4096;
            double acc = 0.0;
            for (int j = 0; j < q; ++j) {
                const double y = -r + 2.0 * r * (j + 0.5) / q;
                const double step = (x + y >= -0.5 && x + y < 0.5) ? 1.0 : 0.0;
                acc += standard_bump(y / r) / r * c1 * step * (2.0 * r / q);
            }
            return acc;
        };
        double worst = 0.0;
        for (int i = n / 4; i < 3 * n / 4; i += 7)
            worst = std::max(worst,
                             std::abs(m.samples()[static_cast<std::size_t>(i)] - oracle(m.x_at(i))));
        CHECK(worst < 1e-3);
    }
    SUBCASE("commutes with whole-cell translation") {
        const auto f = make_tent_function(256);
        std::vector<double> shifted(f.samples().size());
        const int k = 9;
        for (int i = 0; i < f.size(); ++i) shifted[static_cast<std::size_t>(i)] = f.at(i - k);
        const SampledFunction g(f.x_lo(), f.h(), shifted);
        const auto mf = mollify(f, 16 * f.h());
        const auto mg = mollify(g, 16 * f.h());
        for (int i = k + 20; i < f.size() - 20; ++i)
            CHECK(mg.at(i) == doctest::Approx(mf.at(i - k)).epsilon(1e-14));
    }
    SUBCASE("under-resolved kernels are rejected") {
        const auto f = make_step_function(64);
        CHECK_THROWS_WITH_AS(mollify(f, 1.5 * f.h()), doctest::Contains("under-resolved"),
                             std::invalid_argument);
    }
}

TEST_CASE("modulus omega") {
    const WeightFunction one = WeightFunction::one();
    const auto f = make_step_function(512);

    CHECK(modulus_omega(f, 0.0, one) == 0.0);

    SUBCASE("unit step: omega(delta) = 2 h floor(delta/h)") {
        for (int k : {1, 3, 10, 40})
            CHECK(modulus_omega(f, k * f.h() + 0.3 * f.h(), one) ==
                  doctest::Approx(2.0 * k * f.h()).epsilon(1e-12));
    }
    SUBCASE("nondecreasing in delta on the corpus") {
        for (const auto& fn : {make_step_function(256), make_tent_function(256),
                               make_hoelder_function(256, 0.6)}) {
            double prev = 0.0;
            for (int k = 1; k <= 32; k *= 2) {
                const double cur = modulus_omega(fn, k * fn.h(), one);
                CHECK(cur >= prev - 1e-15);
                prev = cur;
            }
        }
    }
    SUBCASE("subadditive: omega(d1 + d2) <= omega(d1) + omega(d2)") {
        for (const auto& fn : {make_step_function(256), make_tent_function(256),
                               make_hoelder_function(256, 0.6),
                               make_mollified_noise_function(256, 0x11)}) {
            const double d1 = 4 * fn.h(), d2 = 10 * fn.h();
            CHECK(modulus_omega(fn, d1 + d2, one) <=
                  modulus_omega(fn, d1, one) + modulus_omega(fn, d2, one) + 1e-12);
        }
    }
}

TEST_CASE("smoothing-vs-translation inequality (first direction)") {
    const WeightFunction one = WeightFunction::one();

    SUBCASE("constant function gives all-zero ratios") {
        const auto c = make_constant_function(512, 2.0);
        std::vector<double> deltas = {8 * c.h(), 16 * c.h(), 32 * c.h()};
        const auto rep = check_sob_to_trans(c, one, 0.25, 0.5, deltas);
        CHECK(rep.max_ratio == 0.0);
    }
    SUBCASE("unit step: empirical constant below 10") {
        const auto f = make_step_function(1024);
        std::vector<double> deltas;
        for (int k = 4; k <= 64; k *= 2) deltas.push_back(k * f.h());
        const auto rep = check_sob_to_trans(f, one, 0.25, 0.5, deltas);
        for (const auto& row : rep.rows) CHECK(row.ratio <= rep.max_ratio);
        CHECK(rep.max_ratio > 0.0);
        CHECK(rep.max_ratio < 10.0);
    }
    SUBCASE("Hoelder sample: constant stable under resolution doubling") {
        auto run = [&](int n) {
            const auto f = make_hoelder_function(n, 0.6);
            std::vector<double> deltas;
            for (int k = 4; k <= 64; k *= 2) deltas.push_back(k * (4.0 / 1024));
            return check_sob_to_trans(f, one, 0.25, 0.5, deltas).max_ratio;
        };
        const double c1 = run(1024), c2 = run(2048);
        CHECK(std::isfinite(c1));
        CHECK(c2 / c1 > 0.5);
        CHECK(c2 / c1 < 2.0);
    }
    SUBCASE("deltas below 4h are rejected") {
        const auto f = make_step_function(128);
        CHECK_THROWS_AS(check_sob_to_trans(f, one, 0.25, 0.5, {2 * f.h()}),
                        std::invalid_argument);
        CHECK_THROWS_AS(check_sob_to_trans(f, one, 0.5, 0.25, {8 * f.h()}),
                        std::invalid_argument);
    }
}

TEST_CASE("translation-vs-smoothing inequality (second direction)") {
    const WeightFunction one = WeightFunction::one();

    SUBCASE("constant function gives zero ratios") {
        const auto c = make_constant_function(512, -1.0);
        const auto rep = check_trans_to_sob(c, one, 0.3, 0.5, {0.25, 0.5, 1.0});
        CHECK(rep.max_ratio == 0.0);
    }
    SUBCASE("tent function: ratios uniformly bounded over the grid") {
        const auto f = make_tent_function(1024);
        const auto rep = check_trans_to_sob(f, one, 0.3, 0.5,
                                            {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0});
        CHECK(rep.max_ratio > 0.0);
        CHECK(rep.max_ratio < 20.0);
    }
    SUBCASE("Hoelder sample obeys the monotone-kappa integral bound") {
        // omega(delta) <= r delta^r integral of kappa^(-r-1) omega(kappa)
        const auto f = make_hoelder_function(1024, 0.6);
        const double r = 0.3;
        // one incremental pass gives omega at every whole-cell shift
        const int kmax = f.size();
        std::vector<double> omega_k(static_cast<std::size_t>(kmax) + 1, 0.0);
        for (int k = 1; k <= kmax; ++k) {
            double accp = 0.0, accm = 0.0;
            for (int i = 0; i < f.size(); ++i) {
                accp += std::abs(f.at(i + k) - f.at(i));
                accm += std::abs(f.at(i - k) - f.at(i));
            }
            omega_k[static_cast<std::size_t>(k)] = std::max(
                {omega_k[static_cast<std::size_t>(k) - 1], accp * f.h(), accm * f.h()});
        }
        auto omega = [&](double d) {
            const int k = std::min(kmax, static_cast<int>(d / f.h()));
            return omega_k[static_cast<std::size_t>(k)];
        };
        const double hi = kmax * f.h();
        const double omega_max = omega_k.back();  // saturates at the support diameter
        for (double delta : {1.0 / 8, 1.0 / 4, 1.0 / 2}) {
            // kappa integral on the cell grid, exact tail beyond the window
            double integral = 0.0;
            for (int k = 1; k < kmax; ++k) {
                const double k0 = k * f.h(), k1 = (k + 1) * f.h();
                integral += 0.5 *
                            (std::pow(k0, -r - 1) * omega_k[static_cast<std::size_t>(k)] +
                             std::pow(k1, -r - 1) * omega_k[static_cast<std::size_t>(k) + 1]) *
                            (k1 - k0);
            }
            integral += omega_max * std::pow(hi, -r) / r;
            CHECK(omega(delta) <= r * std::pow(delta, r) * integral + 1e-9);
        }
    }
    SUBCASE("delta outside (0, 1] is rejected") {
        const auto f = make_tent_function(128);
        CHECK_THROWS_AS(check_trans_to_sob(f, one, 0.3, 0.5, {1.5}), std::invalid_argument);
    }
}

TEST_CASE("ratio reports serialize to csv") {
    const auto f = make_step_function(256);
    const auto rep = check_sob_to_trans(f, WeightFunction::one(), 0.25, 0.5,
                                        {8 * f.h(), 16 * f.h()});
    std::stringstream ss;
    write_ratio_csv(ss, {rep});
    const std::string text = ss.str();
    CHECK(text.find("function,inequality,r,s,delta,lhs,rhs,ratio") == 0);
    CHECK(text.find("step,sob_to_trans") != std::string::npos);
}
