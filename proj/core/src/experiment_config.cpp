#include "sbl/experiment_config.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace sbl {

using nlohmann::json;

Grid GridSpec::build() const {
    if (dim == 1) return Grid::make_1d(cells[0], length[0]);
    return Grid::make_2d(cells[0], cells[1], length[0], length[1]);
}

void ExperimentConfig::require_valid() const {
    const auto& known = known_experiments();
    if (std::find(known.begin(), known.end(), experiment) == known.end())
        throw std::invalid_argument("unknown experiment: " + experiment);
    problem.validate_basic();
    if (mc.paths < 2) throw std::invalid_argument("mc.paths must be >= 2");
    if (mc.path_steps < 1) throw std::invalid_argument("mc.path_steps must be >= 1");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) throw std::invalid_argument("scales must be positive");
        if (i > 0 && scales[i] <= scales[i - 1])
            throw std::invalid_argument("scales must be strictly increasing");
    }
    (void)grid.build();
}

const std::vector<std::string>& known_experiments() {
    static const std::vector<std::string> v = {
        "bv_decay",       "time_continuity", "contraction",  "visc_rate", "cont_dep_sigma",
        "cont_dep_flux",  "fractional_bv",   "entropy_residual", "lemma_checks"};
    return v;
}

namespace {

json flux_to_json(const FluxModel& f) {
    json j;
    j["kind"] = f.kind_name();
    switch (f.kind()) {
        case FluxModel::Kind::linear: j["a"] = f.linear_speed(); break;
        case FluxModel::Kind::polynomial: j["coeffs"] = f.coefficients(); break;
        default: break;
    }
    return j;
}

FluxModel flux_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "burgers") return FluxModel::burgers();
    if (kind == "linear") return FluxModel::linear(j.at("a").get<double>());
    if (kind == "polynomial")
        return FluxModel::polynomial(j.at("coeffs").get<std::vector<double>>());
    throw std::invalid_argument("flux kind not serializable: " + kind);
}

json noise_to_json(const NoiseModel& n) {
    json j;
    j["kind"] = n.kind_name();
    if (n.kind() != NoiseModel::Kind::zero) {
        j["lambda"] = n.lambda();
        j["modes"] = n.modes();
    }
    if (n.kind() == NoiseModel::Kind::x_modulated) j["mu"] = n.mu();
    return j;
}

NoiseModel noise_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return NoiseModel::zero();
    const int modes = j.value("modes", 1);
    if (kind == "linear") return NoiseModel::linear(j.at("lambda").get<double>(), modes);
    if (kind == "sine") return NoiseModel::sine(j.at("lambda").get<double>(), modes);
    if (kind == "x_modulated")
        return NoiseModel::x_modulated(j.at("lambda").get<double>(), j.at("mu").get<double>(),
                                       modes);
    throw std::invalid_argument("noise kind not serializable: " + kind);
}

json initial_to_json(const InitialData& d) {
    json j;
    j["kind"] = d.kind_name();
    switch (d.kind()) {
        case InitialData::Kind::smooth_bump:
            j["height"] = d.height();
            j["width"] = d.width_fraction();
            break;
        case InitialData::Kind::riemann:
            j["left"] = d.left();
            j["right"] = d.right();
            j["split"] = d.split();
            break;
        case InitialData::Kind::sine:
            j["amplitude"] = d.amplitude();
            j["offset"] = d.offset();
            j["periods"] = d.periods();
            break;
        case InitialData::Kind::table:
            j["values"] = d.values();
            break;
    }
    return j;
}

InitialData initial_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "smooth_bump")
        return InitialData::smooth_bump(j.value("height", 1.0), j.value("width", 0.25));
    if (kind == "riemann")
        return InitialData::riemann(j.at("left").get<double>(), j.at("right").get<double>(),
                                    j.value("split", 0.5));
    if (kind == "sine")
        return InitialData::sine(j.value("amplitude", 1.0), j.value("offset", 0.0),
                                 j.value("periods", 1));
    if (kind == "table") return InitialData::table(j.at("values").get<std::vector<double>>());
    throw std::invalid_argument("initial kind unknown: " + kind);
}

json weight_to_json(const WeightFunction& w) {
    json j;
    j["kind"] = w.kind_name();
    if (w.kind() == WeightFunction::Kind::exponential || w.kind() == WeightFunction::Kind::truncated)
        j["c0"] = w.c0();
    if (w.kind() == WeightFunction::Kind::truncated || w.kind() == WeightFunction::Kind::section6)
        j["radius"] = w.radius();
    return j;
}

WeightFunction weight_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "one") return WeightFunction::one();
    if (kind == "exponential") return WeightFunction::exponential(j.at("c0").get<double>());
    if (kind == "truncated")
        return WeightFunction::truncated(j.at("c0").get<double>(), j.at("radius").get<double>());
    if (kind == "section6") return WeightFunction::section6(j.at("radius").get<double>());
    throw std::invalid_argument("weight kind unknown: " + kind);
}

}  // namespace

json problem_to_json(const Problem& p) {
    json j;
    j["flux"] = flux_to_json(p.flux);
    j["noise"] = noise_to_json(p.noise);
    j["epsilon"] = p.viscosity;
    j["initial"] = initial_to_json(p.initial);
    j["T"] = p.horizon;
    return j;
}

Problem problem_from_json(const json& j) {
    Problem p;
    p.flux = flux_from_json(j.at("flux"));
    p.noise = noise_from_json(j.at("noise"));
    p.viscosity = j.at("epsilon").get<double>();
    p.initial = initial_from_json(j.at("initial"));
    p.horizon = j.at("T").get<double>();
    return p;
}

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = cfg.experiment;
    if (!cfg.label.empty()) j["label"] = cfg.label;
    j["problem"] = problem_to_json(cfg.problem);
    if (cfg.initial2) j["initial2"] = initial_to_json(*cfg.initial2);
    j["grid"] = {{"dim", cfg.grid.dim},
                 {"cells", cfg.grid.dim == 1 ? json::array({cfg.grid.cells[0]})
                                             : json::array({cfg.grid.cells[0], cfg.grid.cells[1]})},
                 {"length", cfg.grid.dim == 1
                                ? json::array({cfg.grid.length[0]})
                                : json::array({cfg.grid.length[0], cfg.grid.length[1]})}};
    j["mc"] = {{"paths", cfg.mc.paths}, {"seed", cfg.mc.seed}, {"path_steps", cfg.mc.path_steps}};
    j["scales"] = cfg.scales;
    j["weight"] = weight_to_json(cfg.weight);
    j["output"] = cfg.output;
    j["params"] = cfg.params;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.experiment = j.at("experiment").get<std::string>();
    cfg.label = j.value("label", std::string{});
    cfg.problem = problem_from_json(j.at("problem"));
    if (j.contains("initial2")) cfg.initial2 = initial_from_json(j.at("initial2"));
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        cfg.grid.dim = g.value("dim", 1);
        const auto cells = g.at("cells").get<std::vector<int>>();
        const auto length = g.at("length").get<std::vector<double>>();
        if (static_cast<int>(cells.size()) < cfg.grid.dim ||
            static_cast<int>(length.size()) < cfg.grid.dim)
            throw std::invalid_argument("grid: cells/length must list one entry per axis");
        for (int a = 0; a < cfg.grid.dim; ++a) {
            cfg.grid.cells[static_cast<std::size_t>(a)] = cells[static_cast<std::size_t>(a)];
            cfg.grid.length[static_cast<std::size_t>(a)] = length[static_cast<std::size_t>(a)];
        }
    }
    if (j.contains("mc")) {
        const auto& m = j.at("mc");
        cfg.mc.paths = m.value("paths", 100);
        cfg.mc.seed = m.value("seed", std::uint64_t{1});
        cfg.mc.path_steps = m.value("path_steps", 256);
    }
    if (j.contains("scales")) cfg.scales = j.at("scales").get<std::vector<double>>();
    if (j.contains("weight")) cfg.weight = weight_from_json(j.at("weight"));
    cfg.output = j.value("output", std::string{});
    if (j.contains("params"))
        cfg.params = j.at("params").get<std::map<std::string, double>>();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    json j;
    is >> j;
    return config_from_json(j);
}

std::uint64_t config_digest(const ExperimentConfig& cfg) {
    const std::string dump = config_to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace sbl
