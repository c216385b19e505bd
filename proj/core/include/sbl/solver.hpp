#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbl/brownian_path.hpp"
#include "sbl/field.hpp"
#include "sbl/problem.hpp"

namespace sbl {

enum class FluxScheme { local_lax_friedrichs, engquist_osher };

struct SolverConfig {
    FluxScheme flux_scheme = FluxScheme::local_lax_friedrichs;
    double cfl_number = 0.45;
    /// Upper bound on dt; when set, the range-adaptive CFL control is off.
    std::optional<double> dt_override;
    std::vector<double> snapshot_times;
    /// Record the state at every solver step (entropy-residual runs).
    bool record_every_step = false;
    /// Give up once dyadic refinement has shrunk dt by this many halvings.
    int max_refinements = 30;
};

/// Raised when a state stops being finite; carries the offending time/cell.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double time, std::int64_t cell, const std::string& what)
        : std::runtime_error(what), time_(time), cell_(cell) {}
    double time() const { return time_; }
    std::int64_t cell() const { return cell_; }

private:
    double time_;
    std::int64_t cell_;
};

/// Time-indexed solution snapshots for one sample path. `path` is the
/// (possibly bridge-refined) Wiener path the solver actually consumed;
/// each snapshot stores its node index into that path's time grid.
struct Trajectory {
    Problem problem;
    BrownianPath path;
    struct Snapshot {
        double time;
        int node;
        Field field;
    };
    std::vector<Snapshot> snapshots;

    const Field& at_time(double t, double tol = 1e-9) const;
};

/// Largest stable explicit step: cfl * min over axes of h / max|f'| and
/// h^2 / (2 d eps), each omitted when its mechanism is absent.
double cfl_dt(const Grid& grid, const FluxModel& flux, double eps, double u_lo, double u_hi,
              double cfl);

/// Monotone two-point numerical flux; consistent (F(u,u) = f(u)).
double numerical_flux(double u_left, double u_right, const FluxModel& flux, FluxScheme scheme);

/// One step: explicit flux differencing + centered diffusion, then the
/// Euler-Maruyama noise update u += sigma(x, u) dW with the pre-noise u.
/// dw holds one increment per mode.
Field step(const Field& state, double dt, std::span<const double> dw, const Problem& problem,
           const SolverConfig& config);

/// Advances the initial data to problem.horizon driven by exactly the given
/// path (bridge-refined dyadically whenever the CFL bound requires it).
/// The path grid must end at the horizon.
Trajectory solve(const Problem& problem, const Grid& grid, const BrownianPath& path,
                 const SolverConfig& config);

/// CSV rows: time, cell index, value.
void write_trajectory_csv(std::ostream& os, const Trajectory& t);
void write_trajectory_csv(const std::string& path, const Trajectory& t);

/// Compact little-endian dump: header (magic "SBLTRAJ1", u32 dim, u32 cells
/// per axis, u64 snapshot count), then per snapshot the time followed by
/// row-major doubles.
void write_trajectory_binary(const std::string& path, const Trajectory& t);
Trajectory read_trajectory_binary(const std::string& path, const Problem& problem,
                                  const BrownianPath& brownian);

}  // namespace sbl
