#include "sbl/flux_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbl {

FluxModel FluxModel::burgers(double working_radius) {
    FluxModel m;
    m.kind_ = Kind::burgers;
    m.growth_exponent_ = 2;
    m.growth_constant_ = 0.5;
    m.lipschitz_fprime_ = working_radius;
    m.bound_fsecond_ = 1.0;
    return m;
}

FluxModel FluxModel::linear(double speed) {
    FluxModel m;
    m.kind_ = Kind::linear;
    m.a_ = speed;
    m.growth_exponent_ = 1;
    m.growth_constant_ = std::abs(speed);
    m.lipschitz_fprime_ = std::abs(speed);
    m.bound_fsecond_ = 0.0;
    return m;
}

FluxModel FluxModel::polynomial(std::vector<double> coeffs, double working_radius) {
    FluxModel m;
    m.kind_ = Kind::polynomial;
    m.coeffs_ = std::move(coeffs);
    double csum = 0.0;
    for (double c : m.coeffs_) csum += std::abs(c);
    m.growth_exponent_ = m.coeffs_.empty() ? 0 : static_cast<int>(m.coeffs_.size()) - 1;
    m.growth_constant_ = csum;
    m.lipschitz_fprime_ = m.max_abs_derivative(-working_radius, working_radius);
    double f2max = 0.0;
    for (int i = 0; i <= 512; ++i) {
        const double u = -working_radius + 2.0 * working_radius * i / 512.0;
        f2max = std::max(f2max, std::abs(m.second_derivative(u)));
    }
    m.bound_fsecond_ = f2max;
    return m;
}

FluxModel FluxModel::table(std::vector<double> u, std::vector<double> f) {
    if (u.size() != f.size() || u.size() < 2)
        throw std::invalid_argument("FluxModel::table: need >= 2 matching samples");
    for (std::size_t i = 1; i < u.size(); ++i)
        if (!(u[i] > u[i - 1]))
            throw std::invalid_argument("FluxModel::table: u samples must be strictly increasing");
    FluxModel m;
    m.kind_ = Kind::table;
    m.table_u_ = std::move(u);
    m.table_f_ = std::move(f);
    double slope_max = 0.0, fmax = 0.0;
    for (std::size_t i = 1; i < m.table_u_.size(); ++i) {
        slope_max = std::max(slope_max,
                             std::abs((m.table_f_[i] - m.table_f_[i - 1]) /
                                      (m.table_u_[i] - m.table_u_[i - 1])));
        fmax = std::max(fmax, std::abs(m.table_f_[i]));
    }
    m.growth_exponent_ = 1;
    m.growth_constant_ = std::max(fmax, slope_max);
    m.lipschitz_fprime_ = slope_max;
    m.bound_fsecond_ = 0.0;  // piecewise linear; declared, not attained
    return m;
}

std::string FluxModel::kind_name() const {
    switch (kind_) {
        case Kind::burgers: return "burgers";
        case Kind::linear: return "linear";
        case Kind::polynomial: return "polynomial";
        case Kind::table: return "table";
    }
    return "?";
}

double FluxModel::value(double u) const {
    switch (kind_) {
        case Kind::burgers: return 0.5 * u * u;
        case Kind::linear: return a_ * u;
        case Kind::polynomial: {
            double acc = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
            return acc;
        }
        case Kind::table: {
            const auto& us = table_u_;
            if (u <= us.front()) {
                const double s = (table_f_[1] - table_f_[0]) / (us[1] - us[0]);
                return table_f_[0] + s * (u - us[0]);
            }
            if (u >= us.back()) {
                const std::size_t n = us.size();
                const double s = (table_f_[n - 1] - table_f_[n - 2]) / (us[n - 1] - us[n - 2]);
                return table_f_[n - 1] + s * (u - us[n - 1]);
            }
            const auto it = std::upper_bound(us.begin(), us.end(), u);
            const std::size_t i = static_cast<std::size_t>(it - us.begin());
            const double t = (u - us[i - 1]) / (us[i] - us[i - 1]);
            return (1.0 - t) * table_f_[i - 1] + t * table_f_[i];
        }
    }
    return 0.0;
}

double FluxModel::derivative(double u) const {
    switch (kind_) {
        case Kind::burgers: return u;
        case Kind::linear: return a_;
        case Kind::polynomial: {
            double acc = 0.0;
            for (std::size_t k = coeffs_.size(); k-- > 1;)
                acc = acc * u + static_cast<double>(k) * coeffs_[k];
            return acc;
        }
        case Kind::table: {
            const auto& us = table_u_;
            std::size_t i = 1;
            if (u >= us.back())
                i = us.size() - 1;
            else if (u > us.front())
                i = static_cast<std::size_t>(std::upper_bound(us.begin(), us.end(), u) - us.begin());
            return (table_f_[i] - table_f_[i - 1]) / (us[i] - us[i - 1]);
        }
    }
    return 0.0;
}

double FluxModel::second_derivative(double u) const {
    switch (kind_) {
        case Kind::burgers: return 1.0;
        case Kind::linear: return 0.0;
        case Kind::polynomial: {
            double acc = 0.0;
            for (std::size_t k = coeffs_.size(); k-- > 2;)
                acc = acc * u + static_cast<double>(k) * static_cast<double>(k - 1) * coeffs_[k];
            return acc;
        }
        case Kind::table: return 0.0;
    }
    return 0.0;
}

double FluxModel::max_abs_derivative(double lo, double hi) const {
    if (!(lo <= hi)) throw std::invalid_argument("FluxModel::max_abs_derivative: empty range");
    switch (kind_) {
        case Kind::burgers: return std::max(std::abs(lo), std::abs(hi));
        case Kind::linear: return std::abs(a_);
        case Kind::polynomial: {
            // |f'| is attained at an endpoint or an interior critical point of f';
            // sampled finely, which is exact enough for time-step control.
            double best = std::max(std::abs(derivative(lo)), std::abs(derivative(hi)));
            for (int i = 1; i < 256; ++i)
                best = std::max(best, std::abs(derivative(lo + (hi - lo) * i / 256.0)));
            return best;
        }
        case Kind::table: {
            double best = 0.0;
            for (std::size_t i = 1; i < table_u_.size(); ++i) {
                if (table_u_[i] < lo || table_u_[i - 1] > hi) continue;
                best = std::max(best, std::abs((table_f_[i] - table_f_[i - 1]) /
                                               (table_u_[i] - table_u_[i - 1])));
            }
            if (lo < table_u_.front() || hi > table_u_.back())
                best = std::max(best, lipschitz_fprime_);
            return best;
        }
    }
    return 0.0;
}

}  // namespace sbl
