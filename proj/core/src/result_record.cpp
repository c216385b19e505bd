#include "sbl/result_record.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace sbl {

using nlohmann::json;

namespace {

double get_param(const json& config, const std::string& key, double fallback) {
    if (!config.contains("params")) return fallback;
    const auto& p = config.at("params");
    return p.contains(key) ? p.at(key).get<double>() : fallback;
}

double get_scalar(const ResultRecord& rec, const std::string& key) {
    auto it = rec.scalars.find(key);
    if (it == rec.scalars.end())
        throw std::runtime_error("record " + rec.label + ": missing scalar " + key);
    return it->second;
}

std::vector<const ScaleRow*> rows_named(const ResultRecord& rec, const std::string& name) {
    std::vector<const ScaleRow*> out;
    for (const auto& r : rec.rows)
        if (r.name == name || r.name.rfind(name + ":", 0) == 0) out.push_back(&r);
    return out;
}

void add_check(ResultRecord& rec, const std::string& name, double observed,
               const std::string& relation, double bound) {
    CheckResult c;
    c.name = name;
    c.observed = observed;
    c.bound = bound;
    c.relation = relation;
    if (relation == "<=")
        c.pass = observed <= bound;
    else if (relation == ">=")
        c.pass = observed >= bound;
    else if (relation == "finite")
        c.pass = std::isfinite(observed);
    else
        throw std::logic_error("unknown relation " + relation);
    rec.checks.push_back(c);
}

std::string scale_tag(double scale) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", scale);
    return buf;
}

void verdict_bv_decay(ResultRecord& rec) {
    const double h = get_scalar(rec, "h");
    const double tv0 = get_scalar(rec, "tv0");
    const double tol = get_param(rec.config_json, "h_coeff", 2.0) * h * tv0;
    for (const auto* r : rows_named(rec, "tv_diff"))
        if (r->scale > 0.0)
            add_check(rec, "tv_decay@t=" + scale_tag(r->scale), r->mean, "<=",
                      3.0 * r->stderr_mean + tol);
    if (get_scalar(rec, "exact_martingale") == 1.0) {
        const auto tv = rows_named(rec, "tv_diff");
        const auto l1 = rows_named(rec, "l1_diff");
        if (!tv.empty()) {
            const auto* last = tv.back();
            add_check(rec, "tv_equality@T", std::abs(last->mean), "<=",
                      3.0 * last->stderr_mean + 1e-12);
        }
        if (!l1.empty()) {
            const auto* last = l1.back();
            add_check(rec, "l1_equality@T", std::abs(last->mean), "<=",
                      3.0 * last->stderr_mean + 1e-12);
        }
    }
}

void verdict_time_continuity(ResultRecord& rec) {
    const auto rows = rows_named(rec, "modulus");
    double biggest = 0.0;
    for (const auto* r : rows) biggest = std::max(biggest, std::abs(r->mean));
    if (biggest <= 1e-13) {
        add_check(rec, "frozen_trajectory_modulus", biggest, "<=", 1e-13);
        return;
    }
    const double slack = get_param(rec.config_json, "monotone_slack", 0.02);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        add_check(rec, "modulus_monotone@dt=" + scale_tag(rows[i]->scale), rows[i]->mean, "<=",
                  rows[i + 1]->mean * (1.0 + slack));
    if (!rec.fit) throw std::runtime_error("time_continuity: missing rate fit");
    add_check(rec, "rate_slope", rec.fit->slope, ">=",
              get_param(rec.config_json, "slope_min", 0.30));
}

void verdict_contraction(ResultRecord& rec) {
    const double d0 = get_scalar(rec, "initial_distance");
    const double pos0 = get_scalar(rec, "initial_pos_part");
    const double slack = get_param(rec.config_json, "contraction_slack", 0.05);
    for (const auto* r : rows_named(rec, "distance"))
        if (r->scale > 0.0)
            add_check(rec, "contraction@t=" + scale_tag(r->scale), r->mean, "<=",
                      d0 * (1.0 + slack) + 3.0 * r->stderr_mean);
    for (const auto* r : rows_named(rec, "pos_part"))
        if (r->scale > 0.0)
            add_check(rec, "comparison@t=" + scale_tag(r->scale), r->mean, "<=",
                      pos0 * (1.0 + slack) + 3.0 * r->stderr_mean + 1e-12 * std::max(1.0, d0));
}

void verdict_visc_rate(ResultRecord& rec) {
    if (!rec.fit) throw std::runtime_error("visc_rate: missing rate fit");
    add_check(rec, "rate_slope", rec.fit->slope, ">=",
              get_param(rec.config_json, "slope_min", 0.4));
    add_check(rec, "fit_r_squared", rec.fit->r_squared, ">=",
              get_param(rec.config_json, "r2_min", 0.9));
}

void verdict_cont_dep(ResultRecord& rec) {
    if (!rec.fit) throw std::runtime_error("cont_dep: missing rate fit");
    add_check(rec, "perturbation_slope_lo", rec.fit->slope, ">=",
              get_param(rec.config_json, "slope_lo", 0.9));
    add_check(rec, "perturbation_slope_hi", rec.fit->slope, "<=",
              get_param(rec.config_json, "slope_hi", 1.1));
    add_check(rec, "fitted_C", get_scalar(rec, "fitted_C"), "finite", 0.0);
}

void verdict_fractional_bv(ResultRecord& rec) {
    const auto rows = rows_named(rec, "modulus");
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        add_check(rec, "modulus_monotone@delta=" + scale_tag(rows[i]->scale), rows[i]->mean, "<=",
                  rows[i + 1]->mean * (1.0 + 1e-9));
    if (!rec.fit) throw std::runtime_error("fractional_bv: missing rate fit");
    add_check(rec, "rate_slope", rec.fit->slope, ">=",
              get_param(rec.config_json, "slope_min", 0.3));
    const double slope_max = get_param(rec.config_json, "slope_max", 0.0);
    if (slope_max > 0.0) add_check(rec, "rate_slope_hi", rec.fit->slope, "<=", slope_max);
}

void verdict_entropy_residual(ResultRecord& rec) {
    const double h = get_scalar(rec, "h");
    const double tol = get_param(rec.config_json, "h_coeff", 5.0) * h;
    const bool require_positive = get_param(rec.config_json, "require_positive", 0.0) == 1.0;
    const double positive_min = get_param(rec.config_json, "positive_min", 1e-4);
    for (const auto* r : rows_named(rec, "residual")) {
        add_check(rec, "residual_lower_bound[" + r->name.substr(9) + "]", r->mean, ">=",
                  -3.0 * r->stderr_mean - tol);
        if (require_positive)
            add_check(rec, "residual_strictly_positive[" + r->name.substr(9) + "]", r->mean, ">=",
                      positive_min);
    }
}

void verdict_lemma_checks(ResultRecord& rec) {
    auto bounded = [&](const std::string& key, double bound) {
        add_check(rec, key, get_scalar(rec, key), "<=", bound);
    };
    bounded("eta:sandwich_max_violation", 1e-12);
    bounded("eta:c2_max_jump", 1e-12);
    bounded("eta:m1_error", 1e-9);
    bounded("eta:m2_error", 1e-9);
    bounded("eta:support_violation", 1e-12);
    bounded("eta:eq58_max_excess", 1e-8);
    for (const auto& [key, value] : rec.scalars) {
        if (key.rfind("besov:max_ratio:", 0) == 0) add_check(rec, key, value, "finite", 0.0);
        if (key.rfind("besov:stability:", 0) == 0) {
            add_check(rec, key + "_lo", value, ">=", 0.5);
            add_check(rec, key + "_hi", value, "<=", 2.0);
        }
    }
}

}  // namespace

void evaluate_verdict(ResultRecord& rec) {
    rec.checks.clear();
    if (rec.experiment == "bv_decay")
        verdict_bv_decay(rec);
    else if (rec.experiment == "time_continuity")
        verdict_time_continuity(rec);
    else if (rec.experiment == "contraction")
        verdict_contraction(rec);
    else if (rec.experiment == "visc_rate")
        verdict_visc_rate(rec);
    else if (rec.experiment == "cont_dep_sigma" || rec.experiment == "cont_dep_flux")
        verdict_cont_dep(rec);
    else if (rec.experiment == "fractional_bv")
        verdict_fractional_bv(rec);
    else if (rec.experiment == "entropy_residual")
        verdict_entropy_residual(rec);
    else if (rec.experiment == "lemma_checks")
        verdict_lemma_checks(rec);
    else
        throw std::runtime_error("evaluate_verdict: unknown experiment " + rec.experiment);

    rec.pass = true;
    for (const auto& c : rec.checks) rec.pass = rec.pass && c.pass;
}

json record_to_json(const ResultRecord& rec) {
    json j;
    j["experiment"] = rec.experiment;
    j["label"] = rec.label;
    char dig[32];
    std::snprintf(dig, sizeof dig, "%016llx", static_cast<unsigned long long>(rec.digest));
    j["config_digest"] = dig;
    j["config"] = rec.config_json;
    j["rows"] = json::array();
    for (const auto& r : rec.rows)
        j["rows"].push_back(
            {{"name", r.name}, {"scale", r.scale}, {"mean", r.mean}, {"stderr", r.stderr_mean}});
    j["scalars"] = rec.scalars;
    if (rec.fit) {
        json f;
        f["slope"] = rec.fit->slope;
        f["intercept"] = rec.fit->intercept;
        f["r_squared"] = rec.fit->r_squared;
        f["points"] = json::array();
        for (const auto& [s, v] : rec.fit->points) f["points"].push_back({s, v});
        j["fit"] = f;
    }
    j["checks"] = json::array();
    for (const auto& c : rec.checks)
        j["checks"].push_back({{"name", c.name},
                               {"pass", c.pass},
                               {"observed", c.observed},
                               {"bound", c.bound},
                               {"relation", c.relation}});
    j["pass"] = rec.pass;
    j["wall_time_s"] = rec.wall_time_s;
    return j;
}

ResultRecord record_from_json(const json& j) {
    ResultRecord rec;
    rec.experiment = j.at("experiment").get<std::string>();
    rec.label = j.value("label", rec.experiment);
    rec.digest = std::stoull(j.value("config_digest", std::string{"0"}), nullptr, 16);
    rec.config_json = j.at("config");
    for (const auto& r : j.at("rows"))
        rec.rows.push_back({r.at("name").get<std::string>(), r.at("scale").get<double>(),
                            r.at("mean").get<double>(), r.at("stderr").get<double>()});
    rec.scalars = j.at("scalars").get<std::map<std::string, double>>();
    if (j.contains("fit")) {
        RateFit f;
        f.slope = j.at("fit").at("slope").get<double>();
        f.intercept = j.at("fit").at("intercept").get<double>();
        f.r_squared = j.at("fit").at("r_squared").get<double>();
        for (const auto& p : j.at("fit").at("points"))
            f.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        rec.fit = f;
    }
    for (const auto& c : j.value("checks", json::array()))
        rec.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(),
                              c.at("observed").get<double>(), c.at("bound").get<double>(),
                              c.at("relation").get<std::string>()});
    rec.pass = j.at("pass").get<bool>();
    rec.wall_time_s = j.value("wall_time_s", 0.0);
    return rec;
}

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_record(const std::string& dir, const ResultRecord& rec) {
    std::filesystem::create_directories(dir);
    const std::string base = dir + "/" + (rec.label.empty() ? rec.experiment : rec.label);
    {
        std::ofstream os(base + ".json");
        if (!os) throw std::runtime_error("cannot write " + base + ".json");
        os << record_to_json(rec).dump(2) << '\n';
    }
    {
        std::ofstream os(base + "_scales.csv");
        os << "name,scale,mean,stderr\n";
        for (const auto& r : rec.rows)
            os << r.name << ',' << fmt17(r.scale) << ',' << fmt17(r.mean) << ','
               << fmt17(r.stderr_mean) << '\n';
    }
    if (rec.fit) {
        std::ofstream os(base + "_fit.csv");
        os << "slope,intercept,r_squared\n";
        os << fmt17(rec.fit->slope) << ',' << fmt17(rec.fit->intercept) << ','
           << fmt17(rec.fit->r_squared) << '\n';
    }
}

ResultRecord load_record(const std::string& json_path) {
    std::ifstream is(json_path);
    if (!is) throw std::runtime_error("cannot open record: " + json_path);
    json j;
    is >> j;
    return record_from_json(j);
}

void append_summary_csv(const std::string& path, const EstimateReport& rep) {
    const bool fresh = !std::filesystem::exists(path);
    std::ofstream os(path, std::ios::app);
    if (!os) throw std::runtime_error("cannot open " + path);
    if (fresh) os << "name,M,mean,stderr,slope,r_squared\n";
    os << rep.name << ',' << rep.paths << ',' << fmt17(rep.mean) << ',' << fmt17(rep.stderr_mean)
       << ",,\n";
}

void append_summary_csv(const std::string& path, const std::string& name, const RateFit& fit) {
    const bool fresh = !std::filesystem::exists(path);
    std::ofstream os(path, std::ios::app);
    if (!os) throw std::runtime_error("cannot open " + path);
    if (fresh) os << "name,M,mean,stderr,slope,r_squared\n";
    os << name << ",,,," << fmt17(fit.slope) << ',' << fmt17(fit.r_squared) << '\n';
}

}  // namespace sbl
