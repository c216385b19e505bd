#include "sbl/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbl/mollifier.hpp"
#include "sbl/parallel.hpp"

namespace sbl {

double bv_seminorm(const Field& u) {
    const Grid& g = u.grid();
    double total = 0.0;
    if (g.dim() == 1) {
        const int n = g.cells(0);
        for (int i = 0; i < n; ++i) {
            const int ip = (i + 1 == n) ? 0 : i + 1;
            total += std::abs(u[ip] - u[i]);
        }
        return total;
    }
    const int nx = g.cells(0), ny = g.cells(1);
    const double hx = g.spacing(0), hy = g.spacing(1);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int ip = (i + 1 == nx) ? 0 : i + 1;
            const int jp = (j + 1 == ny) ? 0 : j + 1;
            total += std::abs(u[g.index(ip, j)] - u[g.index(i, j)]) * hy;
            total += std::abs(u[g.index(i, jp)] - u[g.index(i, j)]) * hx;
        }
    return total;
}

double lp_norm(const Field& u, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : u.values()) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    const double vol = u.grid().cell_volume();
    double acc = 0.0;
    if (p == 1.0) {
        for (double v : u.values()) acc += std::abs(v);
    } else if (p == 2.0) {
        for (double v : u.values()) acc += v * v;
    } else {
        for (double v : u.values()) acc += std::pow(std::abs(v), p);
    }
    return std::pow(acc * vol, 1.0 / p);
}

double l1_distance(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("l1_distance: grid mismatch");
    const double vol = a.grid().cell_volume();
    double acc = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc * vol;
}

double l1_positive_part(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("l1_positive_part: grid mismatch");
    const double vol = a.grid().cell_volume();
    double acc = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) acc += std::max(a[i] - b[i], 0.0);
    return acc * vol;
}

double temporal_l1_modulus(const Trajectory& traj, double dt, double window_lo,
                           double window_hi) {
    if (dt == 0.0) return 0.0;
    if (dt < 0.0) throw std::invalid_argument("temporal_l1_modulus: dt must be >= 0");
    const auto& snaps = traj.snapshots;
    if (snaps.size() < 2) throw std::invalid_argument("temporal_l1_modulus: need >= 2 snapshots");

    const double spacing = snaps[1].time - snaps[0].time;
    for (std::size_t j = 1; j + 1 < snaps.size(); ++j)
        if (std::abs((snaps[j + 1].time - snaps[j].time) - spacing) > 1e-9 * spacing)
            throw std::invalid_argument("temporal_l1_modulus: snapshots not uniformly spaced");

    const double ratio = dt / spacing;
    const int k = static_cast<int>(std::llround(ratio));
    if (k < 1 || std::abs(ratio - k) > 1e-9)
        throw std::invalid_argument("temporal_l1_modulus: dt not representable on snapshot grid");

    double acc = 0.0;
    int count = 0;
    for (std::size_t j = 0; j + static_cast<std::size_t>(k) < snaps.size(); ++j) {
        const double t = snaps[j].time;
        if (t < window_lo - 1e-12 || t > window_hi + 1e-12) continue;
        acc += l1_distance(snaps[j + static_cast<std::size_t>(k)].field, snaps[j].field);
        ++count;
    }
    if (count == 0) throw std::invalid_argument("temporal_l1_modulus: empty window");
    return acc / count;
}

namespace {

double weight_at_cell(const WeightFunction& psi, const Grid& g, int i, int j) {
    if (psi.kind() == WeightFunction::Kind::one) return 1.0;
    const double x = g.cell_center(0, i) - 0.5 * g.length(0);
    if (g.dim() == 1) return psi(x);
    return psi(x, g.cell_center(1, j) - 0.5 * g.length(1));
}

}  // namespace

double translation_modulus(const Field& u, double delta, const WeightFunction& psi) {
    if (delta < 0.0) throw std::invalid_argument("translation_modulus: delta must be >= 0");
    const Grid& g = u.grid();
    const double vol = g.cell_volume();
    double best = 0.0;

    for (int axis = 0; axis < g.dim(); ++axis) {
        const double h = g.spacing(axis);
        const int kmax = static_cast<int>(std::floor(delta / h * (1.0 + 1e-12)));
        const int n0 = g.cells(0);
        const int n1 = g.dim() > 1 ? g.cells(1) : 1;
        for (int k = 1; k <= kmax; ++k)
            for (int sign = -1; sign <= 1; sign += 2) {
                double acc = 0.0;
                for (int j = 0; j < n1; ++j)
                    for (int i = 0; i < n0; ++i) {
                        const int si = axis == 0 ? g.wrap(0, i + sign * k) : i;
                        const int sj = axis == 1 ? g.wrap(1, j + sign * k) : j;
                        acc += std::abs(u[g.index(si, sj)] - u[g.index(i, j)]) *
                               weight_at_cell(psi, g, i, j);
                    }
                best = std::max(best, acc * vol);
            }
    }
    return best;
}

double besov_dual_modulus(const Field& u, double delta, const WeightFunction& psi) {
    const Grid& g = u.grid();
    const double h = g.min_spacing();
    if (!(delta >= 2.0 * h)) throw std::invalid_argument("besov_dual_modulus: kernel under-resolved");

    if (g.dim() == 1) {
        const DiscreteKernel kernel = sample_kernel_1d(delta, g.spacing(0));
        const int n = g.cells(0);
        const double vol = g.cell_volume();
        double total = 0.0;
        for (int k = -kernel.radius_cells; k <= kernel.radius_cells; ++k) {
            const double w = kernel.weight(k);
            if (w == 0.0) continue;
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += std::abs(u[g.wrap(0, i + k)] - u[g.wrap(0, i - k)]) *
                       weight_at_cell(psi, g, i, 0);
            total += w * acc * vol;
        }
        return total;
    }

    // 2-D: radial kernel over grid shift vectors inside the delta-ball
    const int kx = static_cast<int>(std::floor(delta / g.spacing(0)));
    const int ky = static_cast<int>(std::floor(delta / g.spacing(1)));
    std::vector<std::pair<std::pair<int, int>, double>> weights;
    double wsum = 0.0;
    for (int b = -ky; b <= ky; ++b)
        for (int a = -kx; a <= kx; ++a) {
            const double r = std::hypot(a * g.spacing(0), b * g.spacing(1));
            const double w = standard_bump(r / delta);
            if (w > 0.0) {
                weights.push_back({{a, b}, w});
                wsum += w;
            }
        }
    const double vol = g.cell_volume();
    double total = 0.0;
    for (const auto& [shift, w] : weights) {
        double acc = 0.0;
        for (int j = 0; j < g.cells(1); ++j)
            for (int i = 0; i < g.cells(0); ++i)
                acc += std::abs(u[g.index(g.wrap(0, i + shift.first), g.wrap(1, j + shift.second))] -
                                u[g.index(g.wrap(0, i - shift.first), g.wrap(1, j - shift.second))]) *
                       weight_at_cell(psi, g, i, j);
        total += (w / wsum) * acc * vol;
    }
    return total;
}

namespace {

void finalize_stats(EstimateReport& rep) {
    double sum = 0.0;
    int good = 0;
    for (double v : rep.per_path)
        if (!std::isnan(v)) {
            sum += v;
            ++good;
        }
    rep.failures = rep.paths - good;
    if (good == 0) {
        rep.mean = std::numeric_limits<double>::quiet_NaN();
        rep.stderr_mean = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    rep.mean = sum / good;
    double ss = 0.0;
    for (double v : rep.per_path)
        if (!std::isnan(v)) ss += (v - rep.mean) * (v - rep.mean);
    rep.stderr_mean = good > 1 ? std::sqrt(ss / (good - 1)) / std::sqrt(static_cast<double>(good)) : 0.0;
}

}  // namespace

std::vector<EstimateReport> mc_vector_expectation(
    const std::vector<std::string>& names, int paths, std::uint64_t seed_base,
    const std::function<std::vector<double>(std::uint64_t, int)>& statistic, int threads,
    double max_failure_fraction) {
    if (paths < 2) throw std::invalid_argument("mc_expectation: need >= 2 paths");
    const std::size_t k = names.size();
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(paths));
    std::vector<std::string> errors(static_cast<std::size_t>(paths));

    parallel_for(paths, [&](std::int64_t i) {
        try {
            rows[static_cast<std::size_t>(i)] =
                statistic(seed_base + static_cast<std::uint64_t>(i), static_cast<int>(i));
            if (rows[static_cast<std::size_t>(i)].size() != k)
                throw std::runtime_error("statistic returned wrong arity");
        } catch (const BlowUpError& e) {
            rows[static_cast<std::size_t>(i)].clear();
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }, threads);

    int failures = 0;
    std::string first_failure;
    for (int i = 0; i < paths; ++i)
        if (rows[static_cast<std::size_t>(i)].empty()) {
            ++failures;
            if (first_failure.empty()) first_failure = errors[static_cast<std::size_t>(i)];
        }
    if (failures > max_failure_fraction * paths)
        throw std::runtime_error("mc_expectation: " + std::to_string(failures) + " of " +
                                 std::to_string(paths) + " paths failed (" + first_failure + ")");

    std::vector<EstimateReport> reports(k);
    for (std::size_t c = 0; c < k; ++c) {
        auto& rep = reports[c];
        rep.name = names[c];
        rep.paths = paths;
        rep.seed_base = seed_base;
        rep.first_failure = first_failure;
        rep.per_path.resize(static_cast<std::size_t>(paths));
        for (int i = 0; i < paths; ++i)
            rep.per_path[static_cast<std::size_t>(i)] =
                rows[static_cast<std::size_t>(i)].empty()
                    ? std::numeric_limits<double>::quiet_NaN()
                    : rows[static_cast<std::size_t>(i)][c];
        finalize_stats(rep);
    }
    return reports;
}

EstimateReport mc_expectation(const std::string& name, int paths, std::uint64_t seed_base,
                              const std::function<double(std::uint64_t, int)>& statistic,
                              int threads, double max_failure_fraction) {
    auto reports = mc_vector_expectation(
        {name}, paths, seed_base,
        [&](std::uint64_t seed, int index) {
            return std::vector<double>{statistic(seed, index)};
        },
        threads, max_failure_fraction);
    return std::move(reports.front());
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_rate: need >= 3 scales");
    RateFit fit;
    fit.points = points;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(points.size());
    std::vector<double> lx, ly;
    for (const auto& [s, v] : points) {
        if (!(s > 0.0) || !(v > 0.0))
            throw std::invalid_argument("fit_rate: scales and values must be positive");
        lx.push_back(std::log(s));
        ly.push_back(std::log(v));
        sx += lx.back();
        sy += ly.back();
        sxx += lx.back() * lx.back();
        sxy += lx.back() * ly.back();
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_rate: degenerate scale grid");
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;

    const double ymean = sy / n;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double pred = fit.intercept + fit.slope * lx[i];
        ss_res += (ly[i] - pred) * (ly[i] - pred);
        ss_tot += (ly[i] - ymean) * (ly[i] - ymean);
    }
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : (ss_res == 0.0 ? 1.0 : 0.0);
    return fit;
}

}  // namespace sbl
