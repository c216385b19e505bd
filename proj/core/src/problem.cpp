#include "sbl/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sbl {

InitialData InitialData::smooth_bump(double height, double width_fraction) {
    if (!(width_fraction > 0.0) || width_fraction > 0.5)
        throw std::invalid_argument("InitialData::smooth_bump: width fraction in (0, 1/2]");
    InitialData d;
    d.kind_ = Kind::smooth_bump;
    d.a_ = height;
    d.b_ = width_fraction;
    return d;
}

InitialData InitialData::riemann(double left, double right, double split) {
    if (!(split > 0.0 && split < 1.0))
        throw std::invalid_argument("InitialData::riemann: split in (0,1)");
    InitialData d;
    d.kind_ = Kind::riemann;
    d.a_ = left;
    d.b_ = right;
    d.c_ = split;
    return d;
}

InitialData InitialData::sine(double amplitude, double offset, int periods) {
    if (periods < 1) throw std::invalid_argument("InitialData::sine: periods >= 1");
    InitialData d;
    d.kind_ = Kind::sine;
    d.a_ = amplitude;
    d.b_ = offset;
    d.periods_ = periods;
    return d;
}

InitialData InitialData::table(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("InitialData::table: empty");
    InitialData d;
    d.kind_ = Kind::table;
    d.values_ = std::move(values);
    return d;
}

std::string InitialData::kind_name() const {
    switch (kind_) {
        case Kind::smooth_bump: return "smooth_bump";
        case Kind::riemann: return "riemann";
        case Kind::sine: return "sine";
        case Kind::table: return "table";
    }
    return "?";
}

namespace {

// C-infinity bump profile, 1 at s = 0 and 0 for |s| >= 1.
double bump_profile(double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s2));
}

}  // namespace

Field InitialData::sample(const Grid& grid) const {
    Field f(grid);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    switch (kind_) {
        case Kind::smooth_bump: {
            const double w0 = b_ * grid.length(0);
            if (grid.dim() == 1) {
                const double cx = 0.5 * grid.length(0);
                for (int i = 0; i < grid.cells(0); ++i)
                    f[i] = a_ * bump_profile((grid.cell_center(0, i) - cx) / w0);
            } else {
                const double cx = 0.5 * grid.length(0);
                const double cy = 0.5 * grid.length(1);
                for (int j = 0; j < grid.cells(1); ++j)
                    for (int i = 0; i < grid.cells(0); ++i) {
                        const double r = std::hypot(grid.cell_center(0, i) - cx,
                                                    grid.cell_center(1, j) - cy);
                        f[grid.index(i, j)] = a_ * bump_profile(r / w0);
                    }
            }
            break;
        }
        case Kind::riemann: {
            const double xsplit = c_ * grid.length(0);
            for (int j = 0; j < (grid.dim() > 1 ? grid.cells(1) : 1); ++j)
                for (int i = 0; i < grid.cells(0); ++i)
                    f[grid.index(i, j)] = grid.cell_center(0, i) < xsplit ? a_ : b_;
            break;
        }
        case Kind::sine: {
            if (grid.dim() == 1) {
                for (int i = 0; i < grid.cells(0); ++i)
                    f[i] = b_ + a_ * std::sin(two_pi * periods_ * grid.cell_center(0, i) /
                                              grid.length(0));
            } else {
                for (int j = 0; j < grid.cells(1); ++j)
                    for (int i = 0; i < grid.cells(0); ++i)
                        f[grid.index(i, j)] =
                            b_ + a_ * std::sin(two_pi * periods_ * grid.cell_center(0, i) /
                                               grid.length(0)) *
                                     std::sin(two_pi * periods_ * grid.cell_center(1, j) /
                                              grid.length(1));
            }
            break;
        }
        case Kind::table: {
            if (static_cast<std::int64_t>(values_.size()) != grid.total_cells())
                throw std::invalid_argument("InitialData::table: size does not match grid");
            for (std::int64_t i = 0; i < grid.total_cells(); ++i) f[i] = values_[static_cast<std::size_t>(i)];
            break;
        }
    }
    return f;
}

void Problem::validate_basic() const {
    if (!(viscosity >= 0.0)) throw std::invalid_argument("Problem: viscosity must be >= 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("Problem: horizon must be > 0");
}

}  // namespace sbl
