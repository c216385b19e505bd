#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sbl/grid.hpp"

namespace sbl {

/// Cell-averaged grid function: the discrete u(t, .).
class Field {
public:
    Field(Grid grid, double fill = 0.0)
        : grid_(grid), values_(static_cast<std::size_t>(grid.total_cells()), fill) {}

    Field(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
    double& operator[](std::int64_t i) { return values_[static_cast<std::size_t>(i)]; }

    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

    /// Periodic access by per-axis indices (wrapped).
    double at(int i0, int i1 = 0) const {
        return values_[static_cast<std::size_t>(
            grid_.index(grid_.wrap(0, i0), grid_.dim() > 1 ? grid_.wrap(1, i1) : 0))];
    }

    double min_value() const;
    double max_value() const;

    /// True iff every value is finite (no NaN/Inf).
    bool all_finite() const;

    Field& add_scaled(const Field& other, double factor);
    Field& scale(double factor);

private:
    Grid grid_;
    std::vector<double> values_;
};

/// One row per cell: index, coordinates, value.
void write_field_csv(std::ostream& os, const Field& f);
void write_field_csv(const std::string& path, const Field& f);

/// Reads the format produced by write_field_csv back onto the given grid.
Field read_field_csv(std::istream& is, const Grid& grid);
Field read_field_csv(const std::string& path, const Grid& grid);

}  // namespace sbl
