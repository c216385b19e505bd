#include "sbl/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sbl {

Field::Field(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != grid_.total_cells())
        throw std::invalid_argument("Field: values length must equal total cell count");
}

double Field::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double Field::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

bool Field::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

Field& Field::add_scaled(const Field& other, double factor) {
    if (other.grid_ != grid_) throw std::invalid_argument("Field::add_scaled: grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += factor * other.values_[i];
    return *this;
}

Field& Field::scale(double factor) {
    for (double& v : values_) v *= factor;
    return *this;
}

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_field_csv(std::ostream& os, const Field& f) {
    const Grid& g = f.grid();
    if (g.dim() == 1) {
        os << "index,x,value\n";
        for (int i = 0; i < g.cells(0); ++i)
            os << i << ',' << fmt_double(g.cell_center(0, i)) << ',' << fmt_double(f[i]) << '\n';
    } else {
        os << "index,x,y,value\n";
        for (int j = 0; j < g.cells(1); ++j)
            for (int i = 0; i < g.cells(0); ++i)
                os << g.index(i, j) << ',' << fmt_double(g.cell_center(0, i)) << ','
                   << fmt_double(g.cell_center(1, j)) << ',' << fmt_double(f[g.index(i, j)])
                   << '\n';
    }
}

void write_field_csv(const std::string& path, const Field& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_field_csv(os, f);
}

Field read_field_csv(std::istream& is, const Grid& grid) {
    Field f(grid);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("field csv: missing header");
    std::int64_t count = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tok;
        std::getline(row, tok, ',');
        const std::int64_t idx = std::stoll(tok);
        // skip coordinate columns, keep the last token as the value
        std::string last;
        while (std::getline(row, tok, ',')) last = tok;
        if (idx < 0 || idx >= grid.total_cells())
            throw std::runtime_error("field csv: index out of range");
        f[idx] = std::stod(last);
        ++count;
    }
    if (count != grid.total_cells()) throw std::runtime_error("field csv: wrong row count");
    return f;
}

Field read_field_csv(const std::string& path, const Grid& grid) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_field_csv(is, grid);
}

}  // namespace sbl
