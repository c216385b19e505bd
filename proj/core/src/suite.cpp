#include "sbl/suite.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>

#include "sbl/experiments.hpp"

namespace sbl {

namespace {

ExperimentConfig base_config(const std::string& experiment, const std::string& label) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    cfg.label = label;
    cfg.problem.flux = FluxModel::burgers();
    cfg.problem.noise = NoiseModel::linear(0.3);
    cfg.problem.viscosity = 5e-3;
    cfg.problem.initial = InitialData::smooth_bump(1.0, 0.25);
    cfg.problem.horizon = 0.5;
    cfg.grid.dim = 1;
    cfg.grid.cells = {512, 1};
    cfg.grid.length = {1.0, 1.0};
    cfg.mc.paths = 200;
    cfg.mc.seed = 20110;
    cfg.mc.path_steps = 256;
    return cfg;
}

}  // namespace

std::vector<ExperimentConfig> acceptance_suite_configs() {
    std::vector<ExperimentConfig> out;

    {
        // pure multiplicative noise: L^1 norm and TV are exact discrete martingales
        ExperimentConfig cfg = base_config("bv_decay", "gbm_exactness");
        cfg.problem.flux = FluxModel::linear(0.0);
        cfg.problem.noise = NoiseModel::linear(0.5);
        cfg.problem.viscosity = 0.0;
        cfg.problem.horizon = 1.0;
        cfg.mc.paths = 400;
        cfg.mc.seed = 101;
        out.push_back(cfg);
    }
    {
        ExperimentConfig cfg = base_config("bv_decay", "bv_decay");
        cfg.mc.seed = 102;
        out.push_back(cfg);
    }
    {
        ExperimentConfig cfg = base_config("time_continuity", "time_continuity");
        cfg.mc.seed = 103;
        const double T = cfg.problem.horizon;
        cfg.scales = {T / 256, T / 128, T / 64, T / 32, T / 16};
        cfg.params["slope_min"] = 0.30;
        out.push_back(cfg);
    }
    {
        ExperimentConfig cfg = base_config("contraction", "contraction");
        cfg.mc.seed = 104;
        cfg.problem.initial = InitialData::smooth_bump(1.0, 0.2);
        cfg.initial2 = InitialData::smooth_bump(0.5, 0.35);
        cfg.params["contraction_slack"] = 0.05;
        out.push_back(cfg);
    }
    {
        ExperimentConfig cfg = base_config("visc_rate", "visc_rate");
        cfg.mc.seed = 105;
        cfg.mc.paths = 100;
        cfg.mc.path_steps = 128;
        cfg.scales = {5e-3, 1e-2, 2e-2, 4e-2};
        cfg.params["ref_epsilon"] = 1.25e-3;
        cfg.params["ref_grid_factor"] = 4;
        cfg.params["slope_min"] = 0.4;
        cfg.params["r2_min"] = 0.9;
        out.push_back(cfg);
    }
    {
        ExperimentConfig cfg = base_config("cont_dep_sigma", "cont_dep_sigma");
        cfg.mc.seed = 106;
        cfg.mc.paths = 100;
        cfg.problem.noise = NoiseModel::sine(0.3);
        cfg.scales = {0.01, 0.02, 0.04};
        cfg.params["slope_lo"] = 0.9;
        cfg.params["slope_hi"] = 1.1;
        out.push_back(cfg);
    }
    {
        ExperimentConfig cfg = base_config("cont_dep_flux", "cont_dep_flux");
        cfg.mc.seed = 107;
        cfg.mc.paths = 100;
        cfg.problem.noise = NoiseModel::sine(0.3);
        cfg.scales = {0.01, 0.02, 0.04};
        cfg.params["slope_lo"] = 0.9;
        cfg.params["slope_hi"] = 1.1;
        out.push_back(cfg);
    }
    {
        // relative Delta(sigma, sigma_hat) semantics with unbounded sigma
        ExperimentConfig cfg = base_config("cont_dep_sigma", "cont_dep_relative");
        cfg.mc.seed = 108;
        cfg.mc.paths = 100;
        cfg.scales = {0.01, 0.02, 0.04};
        cfg.params["relative"] = 1;
        cfg.params["slope_lo"] = 0.9;
        cfg.params["slope_hi"] = 1.1;
        out.push_back(cfg);
    }
    {
        ExperimentConfig cfg = base_config("fractional_bv", "fractional_bv");
        cfg.mc.seed = 109;
        cfg.problem.noise = NoiseModel::x_modulated(0.3, 0.5);
        cfg.grid.length = {2.0 * std::numbers::pi, 1.0};
        const double h = cfg.grid.length[0] / cfg.grid.cells[0];
        cfg.scales = {4 * h, 8 * h, 16 * h, 32 * h, 64 * h};
        cfg.params["slope_min"] = 0.3;
        out.push_back(cfg);
    }
    {
        ExperimentConfig cfg = base_config("fractional_bv", "fractional_bv_control");
        cfg.mc.seed = 110;
        cfg.problem.noise = NoiseModel::x_modulated(0.3, 0.0);
        cfg.grid.length = {2.0 * std::numbers::pi, 1.0};
        const double h = cfg.grid.length[0] / cfg.grid.cells[0];
        cfg.scales = {4 * h, 8 * h, 16 * h, 32 * h, 64 * h};
        cfg.params["slope_min"] = 0.85;
        cfg.params["slope_max"] = 1.15;
        out.push_back(cfg);
    }
    {
        ExperimentConfig cfg = base_config("entropy_residual", "entropy_residual");
        cfg.mc.seed = 111;
        cfg.params["h_coeff"] = 5;
        out.push_back(cfg);
    }
    {
        // deterministic shock control: strict entropy production
        ExperimentConfig cfg = base_config("entropy_residual", "entropy_shock");
        cfg.mc.seed = 112;
        cfg.mc.paths = 2;
        cfg.problem.noise = NoiseModel::zero();
        cfg.problem.viscosity = 0.0;
        cfg.problem.initial = InitialData::riemann(1.0, 0.0, 0.5);
        cfg.params["family"] = 1;
        cfg.params["require_positive"] = 1;
        cfg.params["positive_min"] = 0.01;
        cfg.params["h_coeff"] = 5;
        out.push_back(cfg);
    }
    {
        ExperimentConfig cfg = base_config("lemma_checks", "lemma_checks");
        cfg.mc.paths = 2;
        cfg.params["corpus_cells"] = 1024;
        out.push_back(cfg);
    }
    return out;
}

SuiteResult run_suite(const std::string& outdir, int threads, bool verbose) {
    SuiteResult result;
    result.all_pass = true;
    std::filesystem::create_directories(outdir);
    for (const auto& cfg : acceptance_suite_configs()) {
        ResultRecord rec = run_experiment(cfg, threads, outdir);
        write_record(outdir, rec);
        if (verbose)
            std::printf("%-24s %-18s %s  (%.1fs)\n", rec.label.c_str(), rec.experiment.c_str(),
                        rec.pass ? "PASS" : "FAIL", rec.wall_time_s);
        result.all_pass = result.all_pass && rec.pass;
        result.records.push_back(std::move(rec));
    }
    // summary without timings so reruns stay byte-identical
    std::ofstream os(outdir + "/suite_summary.csv");
    os << "label,experiment,pass\n";
    for (const auto& rec : result.records)
        os << rec.label << ',' << rec.experiment << ',' << (rec.pass ? 1 : 0) << '\n';
    return result;
}

std::vector<CriterionResult> fold_into_criteria(const SuiteResult& suite) {
    auto get = [&](const std::string& label) -> const ResultRecord& {
        for (const auto& r : suite.records)
            if (r.label == label) return r;
        throw std::runtime_error("suite record missing: " + label);
    };
    auto checks_with_prefix_pass = [](const ResultRecord& rec, const std::string& prefix) {
        bool any = false, ok = true;
        for (const auto& c : rec.checks)
            if (c.name.rfind(prefix, 0) == 0) {
                any = true;
                ok = ok && c.pass;
            }
        return any && ok;
    };
    auto describe = [](std::initializer_list<const ResultRecord*> recs) {
        std::string s;
        for (const auto* r : recs) {
            if (!s.empty()) s += ", ";
            s += r->label + (r->pass ? ":pass" : ":FAIL");
        }
        return s;
    };

    std::vector<CriterionResult> out;
    const auto& gbm = get("gbm_exactness");
    out.push_back({1, "noise-only exactness (L1 and TV martingale)", gbm.pass, describe({&gbm})});
    const auto& bv = get("bv_decay");
    out.push_back({2, "spatial BV decay", bv.pass, describe({&bv})});
    const auto& tc = get("time_continuity");
    out.push_back({3, "temporal L1 continuity rate", tc.pass, describe({&tc})});
    const auto& co = get("contraction");
    out.push_back({4, "L1 contraction and comparison", co.pass, describe({&co})});
    const auto& vr = get("visc_rate");
    out.push_back({5, "vanishing-viscosity rate", vr.pass, describe({&vr})});
    const auto& cs = get("cont_dep_sigma");
    const auto& cf = get("cont_dep_flux");
    const auto& cr = get("cont_dep_relative");
    out.push_back({6, "continuous dependence on sigma and flux", cs.pass && cf.pass && cr.pass,
                   describe({&cs, &cf, &cr})});
    const auto& fb = get("fractional_bv");
    const auto& fbc = get("fractional_bv_control");
    out.push_back({7, "fractional BV for x-dependent noise", fb.pass && fbc.pass,
                   describe({&fb, &fbc})});
    const auto& er = get("entropy_residual");
    const auto& es = get("entropy_shock");
    out.push_back({8, "entropy inequality residual", er.pass && es.pass, describe({&er, &es})});
    const auto& lc = get("lemma_checks");
    const bool eta_ok = checks_with_prefix_pass(lc, "eta:");
    out.push_back({9, "entropy approximation machinery", eta_ok,
                   std::string("lemma_checks eta:* ") + (eta_ok ? "pass" : "FAIL")});
    const bool besov_ok = checks_with_prefix_pass(lc, "besov:");
    out.push_back({10, "mollifier/translation lemma corpus", besov_ok,
                   std::string("lemma_checks besov:* ") + (besov_ok ? "pass" : "FAIL")});
    return out;
}

bool compare_csv_dirs(const std::string& a, const std::string& b, std::string& detail) {
    namespace fs = std::filesystem;
    auto list_csvs = [](const std::string& dir) {
        std::vector<std::string> names;
        for (const auto& e : fs::recursive_directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".csv")
                names.push_back(fs::relative(e.path(), dir).string());
        std::sort(names.begin(), names.end());
        return names;
    };
    const auto la = list_csvs(a), lb = list_csvs(b);
    if (la != lb) {
        detail = "csv file sets differ";
        return false;
    }
    for (const auto& name : la) {
        std::ifstream fa(a + "/" + name, std::ios::binary), fb(b + "/" + name, std::ios::binary);
        const std::string ca((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
        const std::string cb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
        if (ca != cb) {
            detail = "byte mismatch in " + name;
            return false;
        }
    }
    detail = "identical (" + std::to_string(la.size()) + " csv files)";
    return true;
}

}  // namespace sbl
