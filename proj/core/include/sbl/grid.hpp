#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace sbl {

/// Uniform periodic grid on a d-dimensional torus, d in {1,2}.
///
/// Cells are indexed per axis by j = 0..cells-1 with centers at
/// (j + 1/2) * spacing. Linear indices are row-major with axis 0 fastest:
/// idx = i0 + n0 * i1.
class Grid {
public:
    static Grid make_1d(int cells, double length) {
        return Grid(1, {cells, 1}, {length, 0.0});
    }
    static Grid make_2d(int cells_x, int cells_y, double length_x, double length_y) {
        return Grid(2, {cells_x, cells_y}, {length_x, length_y});
    }

    int dim() const { return dim_; }
    int cells(int axis) const { return cells_[axis]; }
    double length(int axis) const { return length_[axis]; }
    double spacing(int axis) const { return length_[axis] / cells_[axis]; }

    /// Smallest spacing over all axes.
    double min_spacing() const {
        double h = spacing(0);
        for (int a = 1; a < dim_; ++a) h = h < spacing(a) ? h : spacing(a);
        return h;
    }

    std::int64_t total_cells() const {
        std::int64_t n = 1;
        for (int a = 0; a < dim_; ++a) n *= cells_[a];
        return n;
    }

    /// Volume of one cell.
    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim_; ++a) v *= spacing(a);
        return v;
    }

    double cell_center(int axis, int j) const {
        return (j + 0.5) * spacing(axis);
    }

    /// Periodic wraparound of a per-axis index.
    int wrap(int axis, int j) const {
        const int n = cells_[axis];
        j %= n;
        return j < 0 ? j + n : j;
    }

    std::int64_t index(int i0, int i1 = 0) const {
        return static_cast<std::int64_t>(i0) + static_cast<std::int64_t>(cells_[0]) * i1;
    }

    bool operator==(const Grid& o) const {
        return dim_ == o.dim_ && cells_ == o.cells_ && length_ == o.length_;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }

private:
    Grid(int dim, std::array<int, 2> cells, std::array<double, 2> length)
        : dim_(dim), cells_(cells), length_(length) {
        if (dim < 1 || dim > 2) throw std::invalid_argument("Grid: dim must be 1 or 2");
        for (int a = 0; a < dim; ++a) {
            if (cells_[a] <= 0) throw std::invalid_argument("Grid: cells_per_axis must be positive");
            if (!(length_[a] > 0.0)) throw std::invalid_argument("Grid: domain_length must be positive");
        }
    }

    int dim_;
    std::array<int, 2> cells_;
    std::array<double, 2> length_;
};

}  // namespace sbl
