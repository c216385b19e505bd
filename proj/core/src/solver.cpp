#include "sbl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

namespace sbl {

const Field& Trajectory::at_time(double t, double tol) const {
    for (const auto& s : snapshots)
        if (std::abs(s.time - t) <= tol) return s.field;
    throw std::invalid_argument("Trajectory::at_time: no snapshot near requested time");
}

double cfl_dt(const Grid& grid, const FluxModel& flux, double eps, double u_lo, double u_hi,
              double cfl) {
    if (!(u_lo <= u_hi) || !std::isfinite(u_lo) || !std::isfinite(u_hi))
        throw std::invalid_argument("cfl_dt: empty or non-finite value range");
    if (!(cfl > 0.0) || cfl > 1.0) throw std::invalid_argument("cfl_dt: cfl must be in (0,1]");

    const double amax = flux.max_abs_derivative(u_lo, u_hi);
    double dt = std::numeric_limits<double>::infinity();
    for (int a = 0; a < grid.dim(); ++a) {
        const double h = grid.spacing(a);
        if (amax > 0.0) dt = std::min(dt, h / amax);
        if (eps > 0.0) dt = std::min(dt, h * h / (2.0 * grid.dim() * eps));
    }
    return cfl * dt;
}

namespace {

// Engquist-Osher splitting f = f(0) + int max(f',0) + int min(f',0).
double eo_positive_part(const FluxModel& flux, double u) {
    switch (flux.kind()) {
        case FluxModel::Kind::burgers:
            return u > 0.0 ? 0.5 * u * u : 0.0;
        case FluxModel::Kind::linear:
            return std::max(flux.linear_speed(), 0.0) * u;
        default: {
            // composite Simpson on [0, u]
            const int n = 64;
            const double hstep = u / n;
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x0 = i * hstep, x1 = (i + 1) * hstep;
                const double m = 0.5 * (x0 + x1);
                acc += hstep / 6.0 *
                       (std::max(flux.derivative(x0), 0.0) + 4.0 * std::max(flux.derivative(m), 0.0) +
                        std::max(flux.derivative(x1), 0.0));
            }
            return acc;
        }
    }
}

double eo_negative_part(const FluxModel& flux, double u) {
    switch (flux.kind()) {
        case FluxModel::Kind::burgers:
            return u < 0.0 ? 0.5 * u * u : 0.0;
        case FluxModel::Kind::linear:
            return std::min(flux.linear_speed(), 0.0) * u;
        default: {
            const int n = 64;
            const double hstep = u / n;
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x0 = i * hstep, x1 = (i + 1) * hstep;
                const double m = 0.5 * (x0 + x1);
                acc += hstep / 6.0 *
                       (std::min(flux.derivative(x0), 0.0) + 4.0 * std::min(flux.derivative(m), 0.0) +
                        std::min(flux.derivative(x1), 0.0));
            }
            return acc;
        }
    }
}

}  // namespace

double numerical_flux(double u_left, double u_right, const FluxModel& flux, FluxScheme scheme) {
    switch (scheme) {
        case FluxScheme::local_lax_friedrichs: {
            const double alpha =
                std::max(std::abs(flux.derivative(u_left)), std::abs(flux.derivative(u_right)));
            return 0.5 * (flux.value(u_left) + flux.value(u_right)) -
                   0.5 * alpha * (u_right - u_left);
        }
        case FluxScheme::engquist_osher:
            return flux.value(0.0) + eo_positive_part(flux, u_left) +
                   eo_negative_part(flux, u_right);
    }
    return 0.0;
}

namespace {

void deterministic_substep_1d(const Field& u, Field& out, double dt, const Problem& pb,
                              const SolverConfig& cfg) {
    const Grid& g = u.grid();
    const int n = g.cells(0);
    const double h = g.spacing(0);
    const double lam = dt / h;
    const double nu = pb.viscosity * dt / (h * h);
    const auto& v = u.values();
    auto& w = out.values();

    // interface fluxes F[i] between cells i and i+1 (periodic)
    static thread_local std::vector<double> fluxbuf;
    fluxbuf.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1 == n) ? 0 : i + 1;
        fluxbuf[i] = numerical_flux(v[i], v[ip], pb.flux, cfg.flux_scheme);
    }
    for (int i = 0; i < n; ++i) {
        const int im = (i == 0) ? n - 1 : i - 1;
        const int ip = (i + 1 == n) ? 0 : i + 1;
        w[i] = v[i] - lam * (fluxbuf[i] - fluxbuf[im]) + nu * (v[ip] - 2.0 * v[i] + v[im]);
    }
}

void deterministic_substep_2d(const Field& u, Field& out, double dt, const Problem& pb,
                              const SolverConfig& cfg) {
    const Grid& g = u.grid();
    const int nx = g.cells(0), ny = g.cells(1);
    const double hx = g.spacing(0), hy = g.spacing(1);
    const auto& v = u.values();
    auto& w = out.values();

    for (int j = 0; j < ny; ++j) {
        const int jm = (j == 0) ? ny - 1 : j - 1;
        const int jp = (j + 1 == ny) ? 0 : j + 1;
        for (int i = 0; i < nx; ++i) {
            const int im = (i == 0) ? nx - 1 : i - 1;
            const int ip = (i + 1 == nx) ? 0 : i + 1;
            const double c = v[g.index(i, j)];
            const double xl = v[g.index(im, j)], xr = v[g.index(ip, j)];
            const double yl = v[g.index(i, jm)], yr = v[g.index(i, jp)];
            const double fx = numerical_flux(c, xr, pb.flux, cfg.flux_scheme) -
                              numerical_flux(xl, c, pb.flux, cfg.flux_scheme);
            const double fy = numerical_flux(c, yr, pb.flux, cfg.flux_scheme) -
                              numerical_flux(yl, c, pb.flux, cfg.flux_scheme);
            const double lap = (xr - 2.0 * c + xl) / (hx * hx) + (yr - 2.0 * c + yl) / (hy * hy);
            w[g.index(i, j)] = c - dt / hx * fx - dt / hy * fy + pb.viscosity * dt * lap;
        }
    }
}

void noise_substep(Field& u, const Problem& pb, double dw_combined) {
    if (pb.noise.is_zero() || dw_combined == 0.0) return;
    const Grid& g = u.grid();
    auto& v = u.values();
    if (!pb.noise.x_dependent()) {
        for (auto& val : v) val += pb.noise.value(0.0, val) * dw_combined;
        return;
    }
    if (g.dim() == 1) {
        for (int i = 0; i < g.cells(0); ++i)
            v[i] += pb.noise.value(g.cell_center(0, i), v[i]) * dw_combined;
    } else {
        for (int j = 0; j < g.cells(1); ++j)
            for (int i = 0; i < g.cells(0); ++i) {
                auto& val = v[g.index(i, j)];
                val += pb.noise.value(g.cell_center(0, i), val) * dw_combined;
            }
    }
}

std::int64_t first_nonfinite_cell(const Field& f) {
    const auto& v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i])) return static_cast<std::int64_t>(i);
    return -1;
}

}  // namespace

Field step(const Field& state, double dt, std::span<const double> dw, const Problem& problem,
           const SolverConfig& config) {
    if (static_cast<int>(dw.size()) != problem.noise.modes() && !problem.noise.is_zero())
        throw std::invalid_argument("step: one increment per noise mode required");

    Field out(state.grid());
    if (state.grid().dim() == 1)
        deterministic_substep_1d(state, out, dt, problem, config);
    else
        deterministic_substep_2d(state, out, dt, problem, config);

    double dw_combined = 0.0;
    if (!problem.noise.is_zero()) {
        for (double x : dw) dw_combined += x;
        dw_combined *= problem.noise.mode_scale();
    }
    noise_substep(out, problem, dw_combined);
    return out;
}

Trajectory solve(const Problem& problem, const Grid& grid, const BrownianPath& path,
                 const SolverConfig& config) {
    problem.validate_basic();
    const double T = problem.horizon;
    if (std::abs(path.time_grid().back() - T) > 1e-9 * std::max(1.0, T))
        throw std::invalid_argument("solve: path must end at the problem horizon");
    if (!(config.cfl_number > 0.0) || config.cfl_number > 1.0)
        throw std::invalid_argument("solve: cfl_number must be in (0,1]");

    std::vector<double> wanted = config.snapshot_times;
    std::sort(wanted.begin(), wanted.end());
    for (double t : wanted)
        if (t < 0.0 || t > T + 1e-12)
            throw std::invalid_argument("solve: snapshot time outside [0, T]");

    Trajectory traj;
    traj.problem = problem;

    BrownianPath p = path;
    Field u = problem.initial.sample(grid);
    if (!u.all_finite()) throw BlowUpError(0.0, first_nonfinite_cell(u), "non-finite initial data");

    std::size_t want_idx = 0;
    const double tol = 1e-9 * std::max(1.0, T);
    std::vector<Trajectory::Snapshot> snaps;
    auto record = [&](double t, int node, const Field& f) {
        snaps.push_back({t, node, f});
    };
    if (config.record_every_step) record(0.0, 0, u);
    while (want_idx < wanted.size() && wanted[want_idx] <= tol) {
        if (!config.record_every_step) record(0.0, 0, u);
        ++want_idx;
    }

    int j = 0;  // current node in p's time grid
    std::vector<double> dwbuf(static_cast<std::size_t>(problem.noise.modes()));
    while (j < p.steps()) {
        const double t_now = p.time_grid()[j];
        if (t_now >= T - tol) break;

        // refine the path until its spacing satisfies the step-size bound
        const double limit = config.dt_override
                                 ? *config.dt_override
                                 : cfl_dt(grid, problem.flux, problem.viscosity, u.min_value(),
                                          u.max_value(), config.cfl_number);
        while (p.time_grid()[j + 1] - p.time_grid()[j] > limit * (1.0 + 1e-12)) {
            if (p.refinement_level() - path.refinement_level() >= config.max_refinements)
                throw BlowUpError(t_now, -1, "solve: time step collapsed under refinement");
            p = p.refined();
            j *= 2;
            // everything recorded so far sits on parent nodes
            for (auto& s : snaps) s.node *= 2;
        }

        const double dt = p.time_grid()[j + 1] - p.time_grid()[j];
        for (int k = 0; k < problem.noise.modes(); ++k) dwbuf[static_cast<std::size_t>(k)] = p.increment(k, j);
        u = step(u, dt, dwbuf, problem, config);
        ++j;
        const double t_new = p.time_grid()[j];

        if (std::int64_t bad = first_nonfinite_cell(u); bad >= 0)
            throw BlowUpError(t_new, bad, "solve: solution blew up");

        if (config.record_every_step) {
            record(t_new, j, u);
        } else {
            while (want_idx < wanted.size() && wanted[want_idx] <= t_new + tol) {
                record(t_new, j, u);
                ++want_idx;
            }
        }
    }

    if (want_idx < wanted.size() && !config.record_every_step)
        throw std::invalid_argument("solve: requested snapshot times beyond integration horizon");

    traj.path = std::move(p);
    traj.snapshots = std::move(snaps);
    return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
    os << "time,cell,value\n";
    char buf[32];
    for (const auto& s : t.snapshots) {
        char tbuf[32];
        std::snprintf(tbuf, sizeof tbuf, "%.17g", s.time);
        for (std::int64_t i = 0; i < s.field.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", s.field[i]);
            os << tbuf << ',' << i << ',' << buf << '\n';
        }
    }
}

void write_trajectory_csv(const std::string& path, const Trajectory& t) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_trajectory_csv(os, t);
}

namespace {
constexpr char kTrajMagic[8] = {'S', 'B', 'L', 'T', 'R', 'A', 'J', '1'};
}

void write_trajectory_binary(const std::string& path, const Trajectory& t) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.write(kTrajMagic, 8);
    const Grid* g = t.snapshots.empty() ? nullptr : &t.snapshots.front().field.grid();
    const std::uint32_t dim = g ? static_cast<std::uint32_t>(g->dim()) : 0;
    std::uint32_t cells[2] = {g ? static_cast<std::uint32_t>(g->cells(0)) : 0,
                              (g && g->dim() > 1) ? static_cast<std::uint32_t>(g->cells(1)) : 1};
    double lengths[2] = {g ? g->length(0) : 1.0, (g && g->dim() > 1) ? g->length(1) : 1.0};
    const std::uint64_t count = t.snapshots.size();
    os.write(reinterpret_cast<const char*>(&dim), 4);
    os.write(reinterpret_cast<const char*>(cells), 8);
    os.write(reinterpret_cast<const char*>(lengths), 16);
    os.write(reinterpret_cast<const char*>(&count), 8);
    for (const auto& s : t.snapshots) {
        os.write(reinterpret_cast<const char*>(&s.time), 8);
        os.write(reinterpret_cast<const char*>(s.field.values().data()),
                 static_cast<std::streamsize>(s.field.values().size() * 8));
    }
}

Trajectory read_trajectory_binary(const std::string& path, const Problem& problem,
                                  const BrownianPath& brownian) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    char magic[8];
    is.read(magic, 8);
    if (std::memcmp(magic, kTrajMagic, 8) != 0)
        throw std::runtime_error("trajectory file: bad magic");
    std::uint32_t dim = 0, cells[2] = {0, 0};
    double lengths[2] = {1.0, 1.0};
    std::uint64_t count = 0;
    is.read(reinterpret_cast<char*>(&dim), 4);
    is.read(reinterpret_cast<char*>(cells), 8);
    is.read(reinterpret_cast<char*>(lengths), 16);
    is.read(reinterpret_cast<char*>(&count), 8);
    Grid g = dim <= 1 ? Grid::make_1d(static_cast<int>(cells[0]), lengths[0])
                      : Grid::make_2d(static_cast<int>(cells[0]), static_cast<int>(cells[1]),
                                      lengths[0], lengths[1]);
    Trajectory t;
    t.problem = problem;
    t.path = brownian;
    for (std::uint64_t s = 0; s < count; ++s) {
        double time = 0.0;
        is.read(reinterpret_cast<char*>(&time), 8);
        Field f(g);
        is.read(reinterpret_cast<char*>(f.values().data()),
                static_cast<std::streamsize>(f.values().size() * 8));
        t.snapshots.push_back({time, 0, std::move(f)});
    }
    if (!is) throw std::runtime_error("trajectory file: truncated");
    return t;
}

}  // namespace sbl
