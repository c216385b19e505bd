#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sbl/estimators.hpp"
#include "sbl/solver.hpp"

using namespace sbl;

namespace {

Problem make_problem(FluxModel flux, NoiseModel noise, double eps, InitialData init, double T) {
    Problem p;
    p.flux = flux;
    p.noise = noise;
    p.viscosity = eps;
    p.initial = init;
    p.horizon = T;
    return p;
}

double total_mass(const Field& f) {
    double acc = 0.0;
    for (double v : f.values()) acc += v;
    return acc * f.grid().cell_volume();
}

}  // namespace

TEST_CASE("cfl_dt closed forms") {
    const Grid g = Grid::make_1d(10, 1.0);  // h = 0.1
    CHECK(cfl_dt(g, FluxModel::linear(2.0), 0.0, -1.0, 1.0, 0.5) == doctest::Approx(0.025));
    CHECK(cfl_dt(g, FluxModel::linear(0.0), 0.01, -1.0, 1.0, 1.0) == doctest::Approx(0.5));
    CHECK(cfl_dt(g, FluxModel::burgers(), 0.0, -1.0, 1.0, 0.45) == doctest::Approx(0.45 * 0.1));
    CHECK(std::isinf(cfl_dt(g, FluxModel::linear(0.0), 0.0, -1.0, 1.0, 0.5)));
    CHECK_THROWS_AS(cfl_dt(g, FluxModel::burgers(), 0.0, 1.0, -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("numerical flux consistency and reference values") {
    const FluxModel burgers = FluxModel::burgers();
    for (auto scheme : {FluxScheme::local_lax_friedrichs, FluxScheme::engquist_osher})
        for (double u : {-1.5, 0.0, 2.0})
            CHECK(numerical_flux(u, u, burgers, scheme) ==
                  doctest::Approx(burgers.value(u)).epsilon(1e-12));

    CHECK(numerical_flux(1.0, 0.0, burgers, FluxScheme::local_lax_friedrichs) ==
          doctest::Approx(0.75));
    CHECK(numerical_flux(-1.0, 1.0, burgers, FluxScheme::engquist_osher) ==
          doctest::Approx(0.0));
    // shock case picks the larger one-sided flux
    CHECK(numerical_flux(1.0, 0.0, burgers, FluxScheme::engquist_osher) == doctest::Approx(0.5));
}

TEST_CASE("numerical flux monotonicity (nondecreasing left, nonincreasing right)") {
    const FluxModel burgers = FluxModel::burgers();
    const double d = 1e-6;
    for (auto scheme : {FluxScheme::local_lax_friedrichs, FluxScheme::engquist_osher})
        for (double a = -2.0; a <= 2.0; a += 0.25)
            for (double b = -2.0; b <= 2.0; b += 0.25) {
                const double dfa = numerical_flux(a + d, b, burgers, scheme) -
                                   numerical_flux(a - d, b, burgers, scheme);
                const double dfb = numerical_flux(a, b + d, burgers, scheme) -
                                   numerical_flux(a, b - d, burgers, scheme);
                CHECK(dfa >= -1e-12);
                CHECK(dfb <= 1e-12);
            }
}

TEST_CASE("single steps: heat fixed point, noise multiplier, mass telescoping") {
    const Grid g = Grid::make_1d(32, 1.0);
    SolverConfig cfg;

    SUBCASE("constant field is a fixed point of the heat stencil") {
        const Problem p = make_problem(FluxModel::linear(0.0), NoiseModel::zero(), 0.01,
                                       InitialData::table(std::vector<double>(32, 3.5)), 1.0);
        const Field u0 = p.initial.sample(g);
        const Field u1 = step(u0, 1e-4, {}, p, cfg);
        for (int i = 0; i < 32; ++i) CHECK(u1[i] == doctest::Approx(3.5).epsilon(1e-15));
    }

    SUBCASE("pure linear noise multiplies every cell by 1 + lambda dW") {
        const Problem p = make_problem(FluxModel::linear(0.0), NoiseModel::linear(0.4),
                                       0.0, InitialData::sine(1.0, 0.5), 1.0);
        const Field u0 = p.initial.sample(g);
        const double dw = 0.123;
        const Field u1 = step(u0, 0.01, std::vector<double>{dw}, p, cfg);
        for (int i = 0; i < 32; ++i)
            CHECK(u1[i] == doctest::Approx(u0[i] * (1.0 + 0.4 * dw)).epsilon(1e-14));
    }

    SUBCASE("deterministic Burgers step conserves mass exactly") {
        const Problem p = make_problem(FluxModel::burgers(), NoiseModel::zero(), 0.0,
                                       InitialData::riemann(1.0, 0.0), 1.0);
        const Field u0 = p.initial.sample(g);
        const Field u1 = step(u0, 0.01, {}, p, cfg);
        CHECK(total_mass(u1) == doctest::Approx(total_mass(u0)).epsilon(1e-13));
    }
}

TEST_CASE("solve: linear advection returns to itself after one period") {
    // first-order scheme, so the L1 error contracts roughly linearly in h
    double errs[2];
    int idx = 0;
    for (int n : {128, 256}) {
        const Grid g = Grid::make_1d(n, 1.0);
        const Problem p = make_problem(FluxModel::linear(1.0), NoiseModel::zero(), 0.0,
                                       InitialData::smooth_bump(1.0, 0.25), 1.0);
        const auto path = BrownianPath::sample_uniform(1, 1, 1.0, 64);
        SolverConfig cfg;
        cfg.snapshot_times = {1.0};
        const Trajectory t = solve(p, g, path, cfg);
        errs[idx++] = l1_distance(t.snapshots.back().field, p.initial.sample(g));
    }
    CHECK(errs[0] < 0.2);
    CHECK(errs[1] < errs[0] * 0.75);
}

TEST_CASE("solve: pure noise matches the scalar multiplicative recursion per path") {
    const Grid g = Grid::make_1d(64, 1.0);
    const double lambda = 0.5;
    const Problem p = make_problem(FluxModel::linear(0.0), NoiseModel::linear(lambda), 0.0,
                                   InitialData::smooth_bump(1.0, 0.25), 1.0);
    const auto path = BrownianPath::sample_uniform(99, 1, 1.0, 128);
    SolverConfig cfg;
    cfg.snapshot_times = {1.0};
    const Trajectory t = solve(p, g, path, cfg);

    // oracle: the same explicit recursion on the scalar multiplier
    double mult = 1.0;
    for (int j = 0; j < path.steps(); ++j) mult += (lambda * mult) * path.increment(0, j);

    const Field u0 = p.initial.sample(g);
    const Field& uT = t.snapshots.back().field;
    for (int i = 0; i < 64; ++i)
        CHECK(uT[i] == doctest::Approx(u0[i] * mult).epsilon(1e-12));
}

TEST_CASE("solve: heat decay of a sine mode matches the exact factor") {
    const int n = 256;
    const Grid g = Grid::make_1d(n, 1.0);
    const double eps = 0.01, T = 0.5;
    const Problem p = make_problem(FluxModel::linear(0.0), NoiseModel::zero(), eps,
                                   InitialData::sine(1.0, 0.0), T);
    const auto path = BrownianPath::sample_uniform(1, 1, T, 512);
    SolverConfig cfg;
    cfg.snapshot_times = {T};
    const Trajectory t = solve(p, g, path, cfg);

    const double k = 2.0 * std::numbers::pi;
    const double decay = std::exp(-eps * k * k * T);
    double max_err = 0.0;
    for (int i = 0; i < n; ++i) {
        const double exact = decay * std::sin(k * g.cell_center(0, i));
        max_err = std::max(max_err, std::abs(t.snapshots.back().field[i] - exact));
    }
    CHECK(max_err < 0.01);
}

TEST_CASE("deterministic inviscid runs are TVD step by step") {
    const Grid g = Grid::make_1d(128, 1.0);
    for (auto scheme : {FluxScheme::local_lax_friedrichs, FluxScheme::engquist_osher}) {
        const Problem p = make_problem(FluxModel::burgers(), NoiseModel::zero(), 0.0,
                                       InitialData::riemann(1.0, -0.5), 0.3);
        const auto path = BrownianPath::sample_uniform(1, 1, 0.3, 64);
        SolverConfig cfg;
        cfg.flux_scheme = scheme;
        cfg.record_every_step = true;
        const Trajectory t = solve(p, g, path, cfg);
        for (std::size_t s = 1; s < t.snapshots.size(); ++s)
            CHECK(bv_seminorm(t.snapshots[s].field) <=
                  bv_seminorm(t.snapshots[s - 1].field) + 1e-12);
    }
}

TEST_CASE("mass is conserved without noise, including diffusion") {
    const Grid g = Grid::make_1d(128, 1.0);
    const Problem p = make_problem(FluxModel::burgers(), NoiseModel::zero(), 5e-3,
                                   InitialData::smooth_bump(1.0, 0.2), 0.5);
    const auto path = BrownianPath::sample_uniform(1, 1, 0.5, 64);
    SolverConfig cfg;
    cfg.snapshot_times = {0.0, 0.25, 0.5};
    const Trajectory t = solve(p, g, path, cfg);
    const double m0 = total_mass(t.snapshots.front().field);
    for (const auto& s : t.snapshots)
        CHECK(total_mass(s.field) == doctest::Approx(m0).epsilon(1e-10));
}

TEST_CASE("solve is bit-reproducible") {
    const Grid g = Grid::make_1d(64, 1.0);
    const Problem p = make_problem(FluxModel::burgers(), NoiseModel::linear(0.3), 5e-3,
                                   InitialData::smooth_bump(1.0, 0.25), 0.25);
    const auto path = BrownianPath::sample_uniform(31, 1, 0.25, 64);
    SolverConfig cfg;
    cfg.snapshot_times = {0.25};
    const Trajectory a = solve(p, g, path, cfg);
    const Trajectory b = solve(p, g, path, cfg);
    for (int i = 0; i < 64; ++i)
        CHECK(a.snapshots.back().field[i] == b.snapshots.back().field[i]);
}

TEST_CASE("snapshot times land within one step of the request") {
    const Grid g = Grid::make_1d(64, 1.0);
    const Problem p = make_problem(FluxModel::burgers(), NoiseModel::zero(), 0.0,
                                   InitialData::smooth_bump(1.0, 0.25), 1.0);
    const auto path = BrownianPath::sample_uniform(1, 1, 1.0, 128);
    SolverConfig cfg;
    cfg.snapshot_times = {0.0, 0.33, 0.74, 1.0};
    const Trajectory t = solve(p, g, path, cfg);
    REQUIRE(t.snapshots.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        const double dt = t.path.time_grid()[1] - t.path.time_grid()[0];
        CHECK(t.snapshots[i].time >= cfg.snapshot_times[i] - 1e-12);
        CHECK(t.snapshots[i].time <= cfg.snapshot_times[i] + dt + 1e-12);
    }
}

TEST_CASE("dt_override forces refinement to at most the requested step") {
    const Grid g = Grid::make_1d(32, 1.0);
    const Problem p = make_problem(FluxModel::linear(0.0), NoiseModel::linear(0.2), 0.0,
                                   InitialData::sine(1.0, 0.0), 1.0);
    const auto path = BrownianPath::sample_uniform(3, 1, 1.0, 16);
    SolverConfig cfg;
    cfg.dt_override = 0.02;
    cfg.snapshot_times = {1.0};
    const Trajectory t = solve(p, g, path, cfg);
    const double dt = t.path.time_grid()[1];
    CHECK(dt <= 0.02 * (1.0 + 1e-9));
    CHECK(t.path.steps() == 64);  // 16 * 2^2
}

TEST_CASE("unstable explicit diffusion raises a blow-up with location info") {
    const Grid g = Grid::make_1d(64, 1.0);
    const Problem p = make_problem(FluxModel::linear(0.0), NoiseModel::zero(), 0.05,
                                   InitialData::sine(1.0, 0.0), 1.0);
    const auto path = BrownianPath::sample_uniform(1, 1, 1.0, 256);
    SolverConfig cfg;
    cfg.dt_override = 1.0 / 256.0;  // far above the diffusive stability limit
    cfg.snapshot_times = {1.0};
    try {
        solve(p, g, path, cfg);
        FAIL("expected BlowUpError");
    } catch (const BlowUpError& e) {
        CHECK(e.time() > 0.0);
        CHECK(e.cell() >= 0);
    }
}

TEST_CASE("path must end at the horizon") {
    const Grid g = Grid::make_1d(16, 1.0);
    const Problem p = make_problem(FluxModel::burgers(), NoiseModel::zero(), 0.0,
                                   InitialData::sine(0.5, 0.0), 1.0);
    const auto path = BrownianPath::sample_uniform(1, 1, 0.7, 8);
    CHECK_THROWS_AS(solve(p, g, path, SolverConfig{}), std::invalid_argument);
}

TEST_CASE("two-dimensional smoke run") {
    const Grid g = Grid::make_2d(24, 24, 1.0, 1.0);
    const Problem p = make_problem(FluxModel::burgers(), NoiseModel::zero(), 1e-3,
                                   InitialData::smooth_bump(1.0, 0.25), 0.1);
    const auto path = BrownianPath::sample_uniform(1, 1, 0.1, 32);
    SolverConfig cfg;
    cfg.snapshot_times = {0.1};
    const Trajectory t = solve(p, g, path, cfg);
    CHECK(t.snapshots.back().field.all_finite());
    CHECK(total_mass(t.snapshots.back().field) ==
          doctest::Approx(total_mass(p.initial.sample(g))).epsilon(1e-10));
    CHECK(bv_seminorm(t.snapshots.back().field) <= bv_seminorm(p.initial.sample(g)) + 1e-9);

    // multiplicative noise keeps the run finite and reproducible
    const Problem pn = make_problem(FluxModel::burgers(), NoiseModel::linear(0.3), 1e-3,
                                    InitialData::smooth_bump(1.0, 0.25), 0.1);
    const Trajectory tn1 = solve(pn, g, path, cfg);
    const Trajectory tn2 = solve(pn, g, path, cfg);
    CHECK(tn1.snapshots.back().field.all_finite());
    for (std::int64_t i = 0; i < tn1.snapshots.back().field.size(); ++i)
        CHECK(tn1.snapshots.back().field[i] == tn2.snapshots.back().field[i]);
}

TEST_CASE("trajectory serialization round trips") {
    const Grid g = Grid::make_1d(16, 2.0);
    const Problem p = make_problem(FluxModel::burgers(), NoiseModel::linear(0.3), 1e-3,
                                   InitialData::sine(1.0, 0.0), 0.2);
    const auto path = BrownianPath::sample_uniform(8, 1, 0.2, 32);
    SolverConfig cfg;
    cfg.snapshot_times = {0.1, 0.2};
    const Trajectory t = solve(p, g, path, cfg);

    const std::string file = "traj_roundtrip.bin";
    write_trajectory_binary(file, t);
    const Trajectory back = read_trajectory_binary(file, p, t.path);
    REQUIRE(back.snapshots.size() == t.snapshots.size());
    for (std::size_t s = 0; s < back.snapshots.size(); ++s) {
        CHECK(back.snapshots[s].time == t.snapshots[s].time);
        for (std::int64_t i = 0; i < back.snapshots[s].field.size(); ++i)
            CHECK(back.snapshots[s].field[i] == t.snapshots[s].field[i]);
    }
    std::remove(file.c_str());
}
