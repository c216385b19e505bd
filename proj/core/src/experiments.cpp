#include "sbl/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "sbl/besov_lemma.hpp"
#include "sbl/entropy.hpp"
#include "sbl/estimators.hpp"
#include "sbl/rng.hpp"
#include "sbl/solver.hpp"

namespace sbl {

namespace {

std::vector<double> snapshot_grid(double T, int count) {
    std::vector<double> t(static_cast<std::size_t>(count) + 1);
    for (int j = 0; j <= count; ++j) t[static_cast<std::size_t>(j)] = T * j / count;
    t.back() = T;
    return t;
}

ResultRecord make_record(const ExperimentConfig& cfg) {
    ResultRecord rec;
    rec.experiment = cfg.experiment;
    rec.label = cfg.label.empty() ? cfg.experiment : cfg.label;
    rec.digest = config_digest(cfg);
    rec.config_json = config_to_json(cfg);
    return rec;
}

Trajectory solve_path(const Problem& pb, const Grid& grid, std::uint64_t seed, int path_steps,
                      const std::vector<double>& snapshot_times, bool record_all = false) {
    const BrownianPath path =
        BrownianPath::sample_uniform(seed, pb.noise.modes(), pb.horizon, path_steps);
    SolverConfig sc;
    sc.snapshot_times = snapshot_times;
    sc.record_every_step = record_all;
    return solve(pb, grid, path, sc);
}

void attach_reports(ResultRecord& rec, const std::string& name,
                    const std::vector<double>& scales, const std::vector<EstimateReport>& reps,
                    std::size_t offset = 0) {
    for (std::size_t k = 0; k < scales.size(); ++k) {
        const auto& rep = reps[offset + k];
        rec.rows.push_back({name, scales[k], rep.mean, rep.stderr_mean});
    }
}

bool exact_martingale_case(const ExperimentConfig& cfg) {
    const double forced = cfg.param_or("exact_martingale", -1.0);
    if (forced >= 0.0) return forced == 1.0;
    return cfg.problem.noise.kind() == NoiseModel::Kind::linear && cfg.problem.viscosity == 0.0 &&
           cfg.problem.flux.max_abs_derivative(-10.0, 10.0) == 0.0;
}

// ---------------------------------------------------------------------------
// bv_decay (also covers the exact-martingale configuration)
// ---------------------------------------------------------------------------

ResultRecord run_bv_decay(const ExperimentConfig& cfg, int threads) {
    ResultRecord rec = make_record(cfg);
    const Grid grid = cfg.grid.build();
    const Problem& pb = cfg.problem;
    const int nsnap = static_cast<int>(cfg.param_or("snapshots", 8));
    const auto times = snapshot_grid(pb.horizon, nsnap);

    const Field u0 = pb.initial.sample(grid);
    const double tv0 = bv_seminorm(u0);
    const double l10 = lp_norm(u0, 1.0);

    std::vector<std::string> names;
    for (double t : times) names.push_back("tv@" + std::to_string(t));
    for (double t : times) names.push_back("l1@" + std::to_string(t));

    const std::size_t nt = times.size();
    auto stat = [&](std::uint64_t seed, int) {
        const Trajectory traj = solve_path(pb, grid, seed, cfg.mc.path_steps, times);
        std::vector<double> out(2 * nt);
        for (std::size_t j = 0; j < nt; ++j) {
            out[j] = bv_seminorm(traj.snapshots[j].field);
            out[nt + j] = lp_norm(traj.snapshots[j].field, 1.0);
        }
        return out;
    };
    const auto reps = mc_vector_expectation(names, cfg.mc.paths, cfg.mc.seed, stat, threads);

    attach_reports(rec, "tv", times, reps, 0);
    attach_reports(rec, "l1", times, reps, nt);
    // paired differences against t = 0 share paths, so the difference of the
    // recorded means is the mean of the per-path differences
    for (std::size_t j = 0; j < nt; ++j) {
        EstimateReport diff = reps[j];
        for (std::size_t i = 0; i < diff.per_path.size(); ++i)
            diff.per_path[i] -= reps[0].per_path[i];
        diff.mean -= reps[0].mean;
        double ss = 0.0;
        int good = 0;
        for (double v : diff.per_path)
            if (!std::isnan(v)) {
                ss += (v - diff.mean) * (v - diff.mean);
                ++good;
            }
        diff.stderr_mean = good > 1 ? std::sqrt(ss / (good - 1) / good) : 0.0;
        rec.rows.push_back({"tv_diff", times[j], diff.mean, diff.stderr_mean});
    }
    for (std::size_t j = 0; j < nt; ++j) {
        EstimateReport diff = reps[nt + j];
        for (std::size_t i = 0; i < diff.per_path.size(); ++i)
            diff.per_path[i] -= reps[nt].per_path[i];
        diff.mean -= reps[nt].mean;
        double ss = 0.0;
        int good = 0;
        for (double v : diff.per_path)
            if (!std::isnan(v)) {
                ss += (v - diff.mean) * (v - diff.mean);
                ++good;
            }
        diff.stderr_mean = good > 1 ? std::sqrt(ss / (good - 1) / good) : 0.0;
        rec.rows.push_back({"l1_diff", times[j], diff.mean, diff.stderr_mean});
    }

    rec.scalars["h"] = grid.min_spacing();
    rec.scalars["tv0"] = tv0;
    rec.scalars["l10"] = l10;
    rec.scalars["exact_martingale"] = exact_martingale_case(cfg) ? 1.0 : 0.0;
    return rec;
}

// ---------------------------------------------------------------------------
// time_continuity
// ---------------------------------------------------------------------------

ResultRecord run_time_continuity(const ExperimentConfig& cfg, int threads) {
    if (cfg.scales.empty()) throw std::invalid_argument("time_continuity: empty dt grid");
    ResultRecord rec = make_record(cfg);
    const Grid grid = cfg.grid.build();
    const Problem& pb = cfg.problem;
    const double T = pb.horizon;

    const double spacing = cfg.scales.front();
    const int nsnap = static_cast<int>(std::llround(T / spacing));
    if (std::abs(nsnap * spacing - T) > 1e-9 * T)
        throw std::invalid_argument("time_continuity: smallest dt must divide the horizon");
    const auto times = snapshot_grid(T, nsnap);

    std::vector<std::string> names;
    for (double dt : cfg.scales) names.push_back("modulus@" + std::to_string(dt));

    auto stat = [&](std::uint64_t seed, int) {
        const Trajectory traj = solve_path(pb, grid, seed, cfg.mc.path_steps, times);
        std::vector<double> out;
        out.reserve(cfg.scales.size());
        for (double dt : cfg.scales)
            out.push_back(temporal_l1_modulus(traj, dt, 0.0, T - dt));
        return out;
    };
    const auto reps = mc_vector_expectation(names, cfg.mc.paths, cfg.mc.seed, stat, threads);
    attach_reports(rec, "modulus", cfg.scales, reps);

    bool fittable = true;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < cfg.scales.size(); ++k) {
        if (!(reps[k].mean > 0.0)) fittable = false;
        pts.push_back({cfg.scales[k], reps[k].mean});
    }
    if (fittable) rec.fit = fit_rate(pts);
    rec.scalars["h"] = grid.min_spacing();
    return rec;
}

// ---------------------------------------------------------------------------
// contraction
// ---------------------------------------------------------------------------

ResultRecord run_contraction(const ExperimentConfig& cfg, int threads) {
    if (!cfg.initial2)
        throw std::invalid_argument("contraction: initial2 (second initial datum) required");
    ResultRecord rec = make_record(cfg);
    const Grid grid = cfg.grid.build();
    const Problem& pu = cfg.problem;
    Problem pv = cfg.problem;
    pv.initial = *cfg.initial2;

    const Field u0 = pu.initial.sample(grid);
    const Field v0 = pv.initial.sample(grid);
    // ordered partner for the comparison-principle variant
    std::vector<double> w0vals(u0.values());
    for (std::size_t i = 0; i < w0vals.size(); ++i) w0vals[i] = std::max(u0[static_cast<std::int64_t>(i)], v0[static_cast<std::int64_t>(i)]);
    Problem pw = cfg.problem;
    pw.initial = InitialData::table(w0vals);

    const int nsnap = static_cast<int>(cfg.param_or("snapshots", 8));
    const auto times = snapshot_grid(pu.horizon, nsnap);
    const std::size_t nt = times.size();

    std::vector<std::string> names;
    for (double t : times) names.push_back("distance@" + std::to_string(t));
    for (double t : times) names.push_back("pos_part@" + std::to_string(t));

    auto stat = [&](std::uint64_t seed, int) {
        const BrownianPath path =
            BrownianPath::sample_uniform(seed, pu.noise.modes(), pu.horizon, cfg.mc.path_steps);
        SolverConfig sc;
        sc.snapshot_times = times;
        const Trajectory tu = solve(pu, grid, path, sc);
        const Trajectory tv = solve(pv, grid, path, sc);
        const Trajectory tw = solve(pw, grid, path, sc);
        std::vector<double> out(2 * nt);
        for (std::size_t j = 0; j < nt; ++j) {
            out[j] = l1_distance(tu.snapshots[j].field, tv.snapshots[j].field);
            out[nt + j] = l1_positive_part(tu.snapshots[j].field, tw.snapshots[j].field);
        }
        return out;
    };
    const auto reps = mc_vector_expectation(names, cfg.mc.paths, cfg.mc.seed, stat, threads);
    attach_reports(rec, "distance", times, reps, 0);
    attach_reports(rec, "pos_part", times, reps, nt);

    rec.scalars["initial_distance"] = l1_distance(u0, v0);
    rec.scalars["initial_pos_part"] = l1_positive_part(u0, Field(grid, w0vals));
    rec.scalars["h"] = grid.min_spacing();
    return rec;
}

// ---------------------------------------------------------------------------
// visc_rate
// ---------------------------------------------------------------------------

ResultRecord run_visc_rate(const ExperimentConfig& cfg, int threads) {
    if (cfg.scales.size() < 3) throw std::invalid_argument("visc_rate: need >= 3 scales");
    ResultRecord rec = make_record(cfg);
    const Grid grid = cfg.grid.build();

    const int factor = static_cast<int>(cfg.param_or("ref_grid_factor", 4));
    const double ref_eps = cfg.param_or("ref_epsilon", cfg.scales.front() / 4.0);
    GridSpec fine_spec = cfg.grid;
    for (int a = 0; a < fine_spec.dim; ++a) fine_spec.cells[static_cast<std::size_t>(a)] *= factor;
    const Grid fine = fine_spec.build();

    std::vector<std::string> names;
    for (double eps : cfg.scales) names.push_back("err@" + std::to_string(eps));

    auto stat = [&](std::uint64_t seed, int) {
        const BrownianPath path = BrownianPath::sample_uniform(
            seed, cfg.problem.noise.modes(), cfg.problem.horizon, cfg.mc.path_steps);
        SolverConfig sc;
        sc.snapshot_times = {cfg.problem.horizon};

        Problem pref = cfg.problem;
        pref.viscosity = ref_eps;
        const Trajectory tref = solve(pref, fine, path, sc);
        const Field uref = restrict_to_grid(tref.snapshots.back().field, grid);

        std::vector<double> out;
        out.reserve(cfg.scales.size());
        for (double eps : cfg.scales) {
            Problem pe = cfg.problem;
            pe.viscosity = eps;
            const Trajectory te = solve(pe, grid, path, sc);
            out.push_back(l1_distance(te.snapshots.back().field, uref));
        }
        return out;
    };
    const auto reps = mc_vector_expectation(names, cfg.mc.paths, cfg.mc.seed, stat, threads);
    attach_reports(rec, "l1_error", cfg.scales, reps);

    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < cfg.scales.size(); ++k) pts.push_back({cfg.scales[k], reps[k].mean});
    rec.fit = fit_rate(pts);
    rec.scalars["h"] = grid.min_spacing();
    rec.scalars["ref_epsilon"] = ref_eps;
    return rec;
}

// ---------------------------------------------------------------------------
// cont_dep (sigma / flux)
// ---------------------------------------------------------------------------

NoiseModel perturbed_noise(const NoiseModel& base, double eta, bool relative_ok) {
    switch (base.kind()) {
        case NoiseModel::Kind::sine:
            return NoiseModel::sine(base.lambda() + eta, base.modes());
        case NoiseModel::Kind::linear:
            if (!relative_ok)
                throw std::invalid_argument(
                    "cont_dep_sigma: sup-norm distance ||sigma - sigma_hat||_inf is undefined "
                    "for unbounded sigma kinds; set params.relative = 1 to use the relative "
                    "distance Delta(sigma, sigma_hat)");
            return NoiseModel::linear(base.lambda() + eta, base.modes());
        default:
            throw std::invalid_argument(
                "cont_dep_sigma: perturbation defined for sine and linear noise kinds only");
    }
}

FluxModel perturbed_flux(const FluxModel& base, double eta) {
    std::vector<double> coeffs;
    switch (base.kind()) {
        case FluxModel::Kind::burgers: coeffs = {0.0, 0.0, 0.5}; break;
        case FluxModel::Kind::linear: coeffs = {0.0, base.linear_speed()}; break;
        case FluxModel::Kind::polynomial: coeffs = base.coefficients(); break;
        default:
            throw std::invalid_argument("cont_dep_flux: flux kind cannot be perturbed");
    }
    if (coeffs.size() < 2) coeffs.resize(2, 0.0);
    coeffs[1] += eta;
    return FluxModel::polynomial(coeffs);
}

ResultRecord run_cont_dep(const ExperimentConfig& cfg, int threads, bool vary_sigma) {
    if (cfg.scales.size() < 3) throw std::invalid_argument("cont_dep: need >= 3 scales");
    ResultRecord rec = make_record(cfg);
    const Grid grid = cfg.grid.build();
    const Problem& base = cfg.problem;
    const bool relative = cfg.param_or("relative", 0.0) == 1.0;

    std::vector<Problem> perturbed;
    for (double eta : cfg.scales) {
        Problem p = base;
        if (vary_sigma)
            p.noise = perturbed_noise(base.noise, eta, relative);
        else
            p.flux = perturbed_flux(base.flux, eta);
        perturbed.push_back(std::move(p));
    }

    std::vector<std::string> names;
    for (double eta : cfg.scales) names.push_back("dist@" + std::to_string(eta));

    auto stat = [&](std::uint64_t seed, int) {
        const BrownianPath path = BrownianPath::sample_uniform(seed, base.noise.modes(),
                                                               base.horizon, cfg.mc.path_steps);
        SolverConfig sc;
        sc.snapshot_times = {base.horizon};
        const Trajectory tu = solve(base, grid, path, sc);
        std::vector<double> out;
        out.reserve(perturbed.size());
        for (const auto& p : perturbed) {
            const Trajectory tv = solve(p, grid, path, sc);
            out.push_back(l1_distance(tu.snapshots.back().field, tv.snapshots.back().field));
        }
        return out;
    };
    const auto reps = mc_vector_expectation(names, cfg.mc.paths, cfg.mc.seed, stat, threads);
    attach_reports(rec, "distance", cfg.scales, reps);

    std::vector<std::pair<double, double>> pts;
    double fitted_c = 0.0;
    const double shape = std::sqrt(base.horizon) + base.horizon;
    for (std::size_t k = 0; k < cfg.scales.size(); ++k) {
        pts.push_back({cfg.scales[k], reps[k].mean});
        fitted_c = std::max(fitted_c, reps[k].mean / (shape * cfg.scales[k]));
    }
    rec.fit = fit_rate(pts);
    rec.scalars["fitted_C"] = fitted_c;
    rec.scalars["relative_semantics"] = relative ? 1.0 : 0.0;
    rec.scalars["h"] = grid.min_spacing();
    return rec;
}

// ---------------------------------------------------------------------------
// fractional_bv
// ---------------------------------------------------------------------------

ResultRecord run_fractional_bv(const ExperimentConfig& cfg, int threads) {
    if (cfg.scales.size() < 3) throw std::invalid_argument("fractional_bv: need >= 3 scales");
    ResultRecord rec = make_record(cfg);
    const Grid grid = cfg.grid.build();
    const double h = grid.min_spacing();
    for (double d : cfg.scales)
        if (d < 4.0 * h * (1.0 - 1e-12))
            throw std::invalid_argument("fractional_bv: delta grid below 4h");

    if (!cfg.problem.noise.x_dependent()) rec.scalars["warning_x_independent"] = 1.0;

    std::vector<std::string> names;
    for (double d : cfg.scales) names.push_back("mod@" + std::to_string(d));

    auto stat = [&](std::uint64_t seed, int) {
        const Trajectory traj =
            solve_path(cfg.problem, grid, seed, cfg.mc.path_steps, {cfg.problem.horizon});
        const Field& uT = traj.snapshots.back().field;
        std::vector<double> out;
        out.reserve(cfg.scales.size());
        for (double d : cfg.scales) out.push_back(translation_modulus(uT, d, cfg.weight));
        return out;
    };
    const auto reps = mc_vector_expectation(names, cfg.mc.paths, cfg.mc.seed, stat, threads);
    attach_reports(rec, "modulus", cfg.scales, reps);

    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < cfg.scales.size(); ++k) pts.push_back({cfg.scales[k], reps[k].mean});
    rec.fit = fit_rate(pts);
    rec.scalars["h"] = h;
    return rec;
}

// ---------------------------------------------------------------------------
// entropy_residual
// ---------------------------------------------------------------------------

ResultRecord run_entropy_residual(const ExperimentConfig& cfg, int threads) {
    ResultRecord rec = make_record(cfg);
    const Grid grid = cfg.grid.build();
    const Problem& pb = cfg.problem;
    const double T = pb.horizon;
    const double s = cfg.param_or("s_frac", 0.25) * T;
    const double t = cfg.param_or("t_frac", 0.75) * T;

    struct Member {
        ResidualEntropy eta;
        Field phi;
        std::string tag;
    };
    std::vector<Member> family;
    const bool shock_family = cfg.param_or("family", 0.0) == 1.0;
    if (shock_family) {
        const double pc = cfg.param_or("phi_center", 0.625);
        const double pw = cfg.param_or("phi_width", 0.15);
        const Field phi = make_test_bump(grid, pc, pw);
        family.push_back({ResidualEntropy::kruzkov(0.05, 0.5), phi, "kruzkov_rho0.05_k0.5|phi_shock"});
        family.push_back({ResidualEntropy::kruzkov(0.02, 0.5), phi, "kruzkov_rho0.02_k0.5|phi_shock"});
    } else {
        const Field phi0 = make_test_bump(grid, 0.5, 0.25);
        const Field phi1 = make_test_bump(grid, 0.3, 0.15);
        const std::vector<std::pair<const Field*, std::string>> phis = {{&phi0, "phi0"},
                                                                        {&phi1, "phi1"}};
        std::vector<ResidualEntropy> etas = {
            ResidualEntropy::kruzkov(0.1, 0.0), ResidualEntropy::kruzkov(0.05, 0.5),
            ResidualEntropy::square(), ResidualEntropy::linear()};
        for (const auto& eta : etas)
            for (const auto& [phi, tag] : phis)
                family.push_back({eta, *phi, eta.label() + "|" + tag});
    }

    std::vector<std::string> names;
    for (const auto& m : family) names.push_back("residual:" + m.tag);

    auto stat = [&](std::uint64_t seed, int) {
        const Trajectory traj = solve_path(pb, grid, seed, cfg.mc.path_steps, {}, true);
        std::vector<double> out;
        out.reserve(family.size());
        for (const auto& m : family) out.push_back(entropy_residual(traj, m.eta, m.phi, s, t));
        return out;
    };
    const auto reps = mc_vector_expectation(names, cfg.mc.paths, cfg.mc.seed, stat, threads);
    for (std::size_t k = 0; k < family.size(); ++k)
        rec.rows.push_back({"residual:" + family[k].tag, static_cast<double>(k + 1), reps[k].mean,
                            reps[k].stderr_mean});
    rec.scalars["h"] = grid.min_spacing();
    rec.scalars["s"] = s;
    rec.scalars["t"] = t;
    return rec;
}

// ---------------------------------------------------------------------------
// lemma_checks (entropy machinery + mollifier lemma corpus)
// ---------------------------------------------------------------------------

void eta_property_checks(ResultRecord& rec, const FluxModel& flux) {
    constexpr double M1 = EntropyApprox::M1;
    constexpr double M2 = EntropyApprox::M2;

    // sandwich and support bound over sampled (r, rho)
    double sandwich = 0.0, support = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const std::uint64_t k = static_cast<std::uint64_t>(i);
        const double r = 6.0 * (counter_uniform(0x10a, rng_stream::corpus, k, 1) - 0.5);
        const double rho = 1e-3 + 2.0 * counter_uniform(0x10a, rng_stream::corpus, k, 2);
        const auto e = eta_rho(r, rho);
        sandwich = std::max(sandwich, e.value - std::abs(r));
        sandwich = std::max(sandwich, (std::abs(r) - M1 * rho) - e.value);
        const double bound = std::abs(r) < rho ? M2 / rho : 0.0;
        support = std::max(support, std::abs(e.d2) - bound);
    }
    rec.scalars["eta:sandwich_max_violation"] = std::max(sandwich, 0.0);
    rec.scalars["eta:support_violation"] = std::max(support, 0.0);

    // C^2 continuity at the matching points r = +-rho
    double jump = 0.0;
    for (double rho : {1e-3, 0.05, 1.0, 7.0}) {
        for (double sgn : {-1.0, 1.0}) {
            const auto inner = eta_rho(sgn * rho * (1.0 - 1e-12), rho);
            const auto outer = eta_rho(sgn * rho * (1.0 + 1e-12), rho);
            jump = std::max(jump, std::abs(inner.value - outer.value) / std::max(1.0, rho));
            jump = std::max(jump, std::abs(inner.d1 - outer.d1));
            jump = std::max(jump, std::abs(inner.d2 - outer.d2) * rho);
        }
    }
    rec.scalars["eta:c2_max_jump"] = jump;

    // M1, M2 against the closed forms, via dense evaluation of the profile
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i <= 40000; ++i) {
        const double s = -1.0 + 2.0 * i / 40000.0;
        const auto e = eta_rho(s, 1.0);
        m1 = std::max(m1, std::abs(std::abs(s) - e.value));
        m2 = std::max(m2, std::abs(e.d2));
    }
    rec.scalars["eta:m1_error"] = std::abs(m1 - M1);
    rec.scalars["eta:m2_error"] = std::abs(m2 - M2);

    // entropy-flux antisymmetry-defect bound, |d/du (q(u,v) - q(v,u))|
    double excess = 0.0;
    const double f2 = flux.bound_fsecond();
    for (double rho : {0.5, 0.1, 0.02})
        for (int iu = 0; iu <= 8; ++iu)
            for (int iv = 0; iv <= 8; ++iv) {
                const double u = -2.0 + 4.0 * iu / 8.0;
                const double v = -2.0 + 4.0 * iv / 8.0;
                const double d = entropy_flux_q_du(u, v, flux, rho) -
                                 entropy_flux_q_swapped_du(u, v, flux, rho, 1e-10);
                excess = std::max(excess, std::abs(d) - 0.5 * M2 * f2 * rho);
            }
    rec.scalars["eta:eq58_max_excess"] = std::max(excess, 0.0);
}

void lemma_corpus_checks(ResultRecord& rec, const ExperimentConfig& cfg,
                         std::vector<RatioReport>& all_reports) {
    const int n = static_cast<int>(cfg.param_or("corpus_cells", 1024));
    const double r_sob = cfg.param_or("r_sob", 0.25), s_sob = cfg.param_or("s_sob", 0.5);
    const double r_trans = cfg.param_or("r_trans", 0.3), s_trans = cfg.param_or("s_trans", 0.5);

    auto corpus = [&](int cells) {
        std::vector<SampledFunction> fs;
        fs.push_back(make_step_function(cells));
        fs.push_back(make_tent_function(cells));
        fs.push_back(make_hoelder_function(cells, 0.6));
        fs.push_back(make_mollified_noise_function(cells, 0x6e0));
        return fs;
    };

    const auto base = corpus(n);
    const auto fine = corpus(2 * n);
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto& f = base[i];
        const auto& f2 = fine[i];
        std::vector<double> sob_deltas;
        for (int k = 4; k <= 64; k *= 2) sob_deltas.push_back(k * f.h());
        std::vector<double> trans_deltas = {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0};

        const auto sob = check_sob_to_trans(f, cfg.weight, r_sob, s_sob, sob_deltas);
        const auto sobf = check_sob_to_trans(f2, cfg.weight, r_sob, s_sob, sob_deltas);
        const auto trans = check_trans_to_sob(f, cfg.weight, r_trans, s_trans, trans_deltas);
        const auto transf = check_trans_to_sob(f2, cfg.weight, r_trans, s_trans, trans_deltas);
        all_reports.push_back(sob);
        all_reports.push_back(sobf);
        all_reports.push_back(trans);
        all_reports.push_back(transf);

        for (const auto& row : sob.rows)
            rec.rows.push_back({"sob:" + f.label(), row.delta, row.ratio, 0.0});
        for (const auto& row : trans.rows)
            rec.rows.push_back({"trans:" + f.label(), row.delta, row.ratio, 0.0});

        auto stability = [](double a, double b) {
            if (a == 0.0 && b == 0.0) return 1.0;
            return b / a;
        };
        rec.scalars["besov:max_ratio:sob:" + f.label()] = sob.max_ratio;
        rec.scalars["besov:max_ratio:trans:" + f.label()] = trans.max_ratio;
        rec.scalars["besov:stability:sob:" + f.label()] = stability(sob.max_ratio, sobf.max_ratio);
        rec.scalars["besov:stability:trans:" + f.label()] =
            stability(trans.max_ratio, transf.max_ratio);
    }
}

ResultRecord run_lemma_checks(const ExperimentConfig& cfg, const std::string& output_dir) {
    ResultRecord rec = make_record(cfg);
    eta_property_checks(rec, cfg.problem.flux);
    std::vector<RatioReport> reports;
    lemma_corpus_checks(rec, cfg, reports);
    if (!output_dir.empty()) {
        std::filesystem::create_directories(output_dir);
        std::ofstream os(output_dir + "/" +
                         (cfg.label.empty() ? cfg.experiment : cfg.label) + "_ratios.csv");
        write_ratio_csv(os, reports);
    }
    return rec;
}

}  // namespace

Field restrict_to_grid(const Field& fine, const Grid& coarse) {
    const Grid& gf = fine.grid();
    if (gf.dim() != coarse.dim()) throw std::invalid_argument("restrict_to_grid: dim mismatch");
    int fx = gf.cells(0) / coarse.cells(0);
    if (fx * coarse.cells(0) != gf.cells(0))
        throw std::invalid_argument("restrict_to_grid: cell counts must divide");
    if (gf.dim() == 1) {
        Field out(coarse);
        for (int i = 0; i < coarse.cells(0); ++i) {
            double acc = 0.0;
            for (int k = 0; k < fx; ++k) acc += fine[i * fx + k];
            out[i] = acc / fx;
        }
        return out;
    }
    const int fy = gf.cells(1) / coarse.cells(1);
    if (fy * coarse.cells(1) != gf.cells(1))
        throw std::invalid_argument("restrict_to_grid: cell counts must divide");
    Field out(coarse);
    for (int j = 0; j < coarse.cells(1); ++j)
        for (int i = 0; i < coarse.cells(0); ++i) {
            double acc = 0.0;
            for (int b = 0; b < fy; ++b)
                for (int a = 0; a < fx; ++a)
                    acc += fine[gf.index(i * fx + a, j * fy + b)];
            out[coarse.index(i, j)] = acc / (fx * fy);
        }
    return out;
}

ResultRecord run_experiment(const ExperimentConfig& cfg, int threads,
                            const std::string& output_dir) {
    cfg.require_valid();
    const auto start = std::chrono::steady_clock::now();

    ResultRecord rec;
    if (cfg.experiment == "bv_decay")
        rec = run_bv_decay(cfg, threads);
    else if (cfg.experiment == "time_continuity")
        rec = run_time_continuity(cfg, threads);
    else if (cfg.experiment == "contraction")
        rec = run_contraction(cfg, threads);
    else if (cfg.experiment == "visc_rate")
        rec = run_visc_rate(cfg, threads);
    else if (cfg.experiment == "cont_dep_sigma")
        rec = run_cont_dep(cfg, threads, true);
    else if (cfg.experiment == "cont_dep_flux")
        rec = run_cont_dep(cfg, threads, false);
    else if (cfg.experiment == "fractional_bv")
        rec = run_fractional_bv(cfg, threads);
    else if (cfg.experiment == "entropy_residual")
        rec = run_entropy_residual(cfg, threads);
    else if (cfg.experiment == "lemma_checks")
        rec = run_lemma_checks(cfg, output_dir);
    else
        throw std::invalid_argument("unknown experiment: " + cfg.experiment);

    evaluate_verdict(rec);
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

}  // namespace sbl
