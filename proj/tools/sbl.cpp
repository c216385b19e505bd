// sbl: config-driven experiment runner for the stochastic balance-law lab.
//
// Exit codes: 0 all checks pass, 1 any check fails, 2 configuration error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbl/experiments.hpp"
#include "sbl/suite.hpp"
#include "sbl/validation.hpp"

namespace {

void print_record(const sbl::ResultRecord& rec) {
    std::printf("%s (%s): %s  [%.1fs]\n", rec.label.c_str(), rec.experiment.c_str(),
                rec.pass ? "PASS" : "FAIL", rec.wall_time_s);
    for (const auto& c : rec.checks)
        std::printf("  %-48s %s  (observed %.6g %s %.6g)\n", c.name.c_str(),
                    c.pass ? "ok" : "VIOLATED", c.observed, c.relation.c_str(), c.bound);
    if (rec.fit)
        std::printf("  fit: slope %.4f, intercept %.4f, r^2 %.4f\n", rec.fit->slope,
                    rec.fit->intercept, rec.fit->r_squared);
}

int cmd_run(const std::string& config_path, const std::string& out_override, int threads) {
    sbl::ExperimentConfig cfg;
    try {
        cfg = sbl::load_config(config_path);
        cfg.require_valid();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    }
    const std::string outdir =
        !out_override.empty() ? out_override : (cfg.output.empty() ? "results" : cfg.output);
    sbl::ResultRecord rec = sbl::run_experiment(cfg, threads, outdir);
    sbl::write_record(outdir, rec);
    print_record(rec);
    std::printf("results written to %s\n", outdir.c_str());
    return rec.pass ? 0 : 1;
}

int cmd_validate(const std::string& config_path) {
    sbl::ExperimentConfig cfg;
    try {
        cfg = sbl::load_config(config_path);
        cfg.require_valid();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    }
    const double lo = cfg.param_or("range_lo", -10.0);
    const double hi = cfg.param_or("range_hi", 10.0);
    const auto rep = sbl::validate_problem(cfg.problem, lo, hi);
    std::printf("standing assumptions on [%g, %g]:\n", lo, hi);
    for (const auto& c : rep.checks) {
        if (!c.applicable) {
            std::printf("  %-28s n/a\n", c.name.c_str());
            continue;
        }
        std::printf("  %-28s %s  (observed %.6g vs declared %.6g", c.name.c_str(),
                    c.satisfied ? "satisfied" : "VIOLATED", c.observed, c.declared);
        if (!c.satisfied)
            std::printf("; witness u=%.4g v=%.4g x=%.4g", c.witness_u, c.witness_v, c.witness_x);
        std::printf(")\n");
    }
    std::printf("config ok: experiment %s on %d paths\n", cfg.experiment.c_str(), cfg.mc.paths);
    return rep.all_satisfied() ? 0 : 1;
}

int cmd_suite(const std::string& outdir, bool determinism, int threads) {
    const sbl::SuiteResult suite = sbl::run_suite(outdir, threads);
    for (const auto& crit : sbl::fold_into_criteria(suite))
        std::printf("criterion %2d: %-44s %s  (%s)\n", crit.index, crit.name.c_str(),
                    crit.pass ? "PASS" : "FAIL", crit.detail.c_str());
    bool ok = suite.all_pass;
    if (determinism) {
        const std::string second = outdir + "_rerun";
        const sbl::SuiteResult again = sbl::run_suite(second, threads, false);
        std::string detail;
        const bool same = sbl::compare_csv_dirs(outdir, second, detail);
        std::printf("criterion 11: %-44s %s  (%s)\n", "byte-identical rerun", same ? "PASS" : "FAIL",
                    detail.c_str());
        ok = ok && same && again.all_pass;
    }
    return ok ? 0 : 1;
}

int cmd_report(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        std::fprintf(stderr, "configuration error: no such directory %s\n", dir.c_str());
        return 2;
    }
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
        std::fprintf(stderr, "configuration error: no records in %s\n", dir.c_str());
        return 2;
    }
    bool ok = true;
    for (const auto& p : paths) {
        sbl::ResultRecord rec;
        try {
            rec = sbl::load_record(p);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "configuration error reading %s: %s\n", p.c_str(), e.what());
            return 2;
        }
        const bool stored = rec.pass;
        sbl::evaluate_verdict(rec);
        const bool consistent = stored == rec.pass;
        std::printf("%-24s recomputed %s, stored %s%s\n", rec.label.c_str(),
                    rec.pass ? "PASS" : "FAIL", stored ? "PASS" : "FAIL",
                    consistent ? "" : "  << verdict mismatch");
        ok = ok && rec.pass && consistent;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic balance-law simulation and verification lab"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware)");

    std::string config_path, outdir = "suite_results", out_override, report_dir;
    bool determinism = false;

    auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
    run->add_option("config", config_path, "config JSON path")->required();
    run->add_option("--out", out_override, "output directory override");

    auto* validate = app.add_subcommand("validate", "check a config and its standing assumptions");
    validate->add_option("config", config_path, "config JSON path")->required();

    auto* suite = app.add_subcommand("suite", "run the full verification suite");
    suite->add_option("--out", outdir, "output directory");
    suite->add_flag("--determinism", determinism, "re-run and compare CSV bytes");

    auto* report = app.add_subcommand("report", "re-evaluate verdicts from stored records");
    report->add_option("dir", report_dir, "results directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_override, threads);
        if (validate->parsed()) return cmd_validate(config_path);
        if (suite->parsed()) return cmd_suite(outdir, determinism, threads);
        if (report->parsed()) return cmd_report(report_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
