#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sbl/brownian_path.hpp"
#include "sbl/rng.hpp"

using namespace sbl;

TEST_CASE("philox4x64-10 reference blocks") {
    // reference values from an independent implementation of the same
    // algorithm (which emits the block for counter + 1)
    {
        const auto out = Philox4x64::block({1, 0, 0, 0}, {0, 0});
        CHECK(out[0] == 0x02f4ba6408e4d89bULL);
        CHECK(out[1] == 0x3dd62b0b9ca8c5b2ULL);
        CHECK(out[2] == 0x1c8667a55d902e79ULL);
        CHECK(out[3] == 0x907d7a052fd5b4dcULL);
    }
    {
        const auto out = Philox4x64::block({2, 2, 3, 4}, {0xdeadbeefULL, 0xcafebabeULL});
        CHECK(out[0] == 0x8730fa6a39cb2758ULL);
        CHECK(out[1] == 0xa6ecfda93bd56f75ULL);
        CHECK(out[2] == 0x7744166c917e628bULL);
        CHECK(out[3] == 0x925082b95f9d7389ULL);
    }
    {
        const auto out = Philox4x64::block({1, 0, 0, 0}, {42, 7});
        CHECK(out[0] == 0xa64064f34e84b9a3ULL);
        CHECK(out[3] == 0xf3f6001d4fa83454ULL);
    }
    {
        constexpr std::uint64_t ff = 0xFFFFFFFFFFFFFFFFULL;
        const auto out = Philox4x64::block({0, 0, 0, 0}, {ff, ff});
        CHECK(out[0] == 0x44b7493d1acfc229ULL);
        CHECK(out[3] == 0x605644dde03b01b1ULL);
    }
}

TEST_CASE("unit-interval mappings stay in range") {
    for (std::uint64_t x : {std::uint64_t{0}, std::uint64_t{1}, ~std::uint64_t{0}}) {
        CHECK(u64_to_unit_open(x) > 0.0);
        CHECK(u64_to_unit_open(x) <= 1.0);
        CHECK(u64_to_unit(x) >= 0.0);
        CHECK(u64_to_unit(x) < 1.0);
    }
}

TEST_CASE("path sampling basics") {
    SUBCASE("time grid {0} yields no increments") {
        const auto p = BrownianPath::sample(5, 2, {0.0});
        CHECK(p.steps() == 0);
    }
    SUBCASE("same seed reproduces bit-identical increments") {
        const auto a = BrownianPath::sample_uniform(42, 3, 1.0, 17);
        const auto b = BrownianPath::sample_uniform(42, 3, 1.0, 17);
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 17; ++j) CHECK(a.increment(k, j) == b.increment(k, j));
    }
    SUBCASE("bad grids are rejected") {
        CHECK_THROWS_AS(BrownianPath::sample(1, 1, {0.0, 0.5, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(BrownianPath::sample(1, 1, {0.1, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(BrownianPath::sample(1, 0, {0.0, 1.0}), std::invalid_argument);
    }
}

TEST_CASE("W(1) sample variance matches Var W(1) = t") {
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto p = BrownianPath::sample(1000 + static_cast<std::uint64_t>(i), 1, {0.0, 1.0});
        const double w = p.increment(0, 0);
        sum += w;
        sumsq += w * w;
    }
    const double mean = sum / n;
    const double var = (sumsq - n * mean * mean) / (n - 1);
    CHECK(var > 0.99);
    CHECK(var < 1.01);
}

TEST_CASE("paths from different seeds are uncorrelated") {
    const int n = 10000;
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    for (int i = 0; i < n; ++i) {
        const auto a = BrownianPath::sample(static_cast<std::uint64_t>(2 * i), 1, {0.0, 1.0});
        const auto b = BrownianPath::sample(static_cast<std::uint64_t>(2 * i + 1), 1, {0.0, 1.0});
        const double wa = a.increment(0, 0), wb = b.increment(0, 0);
        sa += wa;
        sb += wb;
        saa += wa * wa;
        sbb += wb * wb;
        sab += wa * wb;
    }
    const double cov = sab / n - (sa / n) * (sb / n);
    const double corr = cov / std::sqrt((saa / n - sa / n * sa / n) * (sbb / n - sb / n * sb / n));
    CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("bridge refinement preserves the coarse path") {
    const auto p = BrownianPath::sample_uniform(7, 2, 2.0, 8);
    const auto q = p.refined();
    CHECK(q.steps() == 16);

    SUBCASE("children sum to the parent increment exactly") {
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 8; ++j) {
                const double sum = q.increment(k, 2 * j) + q.increment(k, 2 * j + 1);
                CHECK(sum == doctest::Approx(p.increment(k, j)).epsilon(1e-12));
            }
    }
    SUBCASE("double refinement keeps original node values") {
        const auto r = q.refined();
        for (int k = 0; k < 2; ++k) {
            const auto wp = p.cumulative(k);
            const auto wr = r.cumulative(k);
            for (int j = 0; j <= 8; ++j)
                CHECK(wr[static_cast<std::size_t>(4 * j)] ==
                      doctest::Approx(wp[static_cast<std::size_t>(j)]).epsilon(1e-12));
        }
    }
    SUBCASE("non-uniform grids refuse to refine") {
        const auto nu = BrownianPath::sample(3, 1, {0.0, 0.5, 2.0});
        CHECK_THROWS_AS(nu.refined(), std::invalid_argument);
    }
}

TEST_CASE("bridge midpoint variance is dt/4") {
    // refine a unit step and collect the conditional midpoint deviation
    const int n = 100000;
    double sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto p = BrownianPath::sample(static_cast<std::uint64_t>(i), 1, {0.0, 1.0});
        const auto q = p.refined();
        const double xi = q.increment(0, 0) - 0.5 * p.increment(0, 0);
        sumsq += xi * xi;
    }
    const double var = sumsq / n;
    CHECK(var == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("combined increment scales by 1/sqrt(m)") {
    const auto p = BrownianPath::sample_uniform(11, 4, 1.0, 5);
    for (int j = 0; j < 5; ++j) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += p.increment(k, j);
        CHECK(p.combined_increment(j) == doctest::Approx(s / 2.0).epsilon(1e-14));
    }
}
