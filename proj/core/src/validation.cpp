#include "sbl/validation.hpp"

#include <cmath>
#include <stdexcept>

#include "sbl/rng.hpp"

namespace sbl {

ValidationReport validate_problem(const Problem& p, double range_lo, double range_hi,
                                  int sample_pairs, std::uint64_t seed) {
    if (!(range_lo < range_hi) || !std::isfinite(range_lo) || !std::isfinite(range_hi))
        throw std::invalid_argument("validate_problem: range must be a finite interval");

    ValidationReport rep;
    const auto& sigma = p.noise;
    const double span = range_hi - range_lo;
    const double xspan = 20.0;  // spatial sampling window for x-dependent kinds

    auto draw = [&](std::uint64_t idx, std::uint64_t which) {
        return counter_uniform(seed, rng_stream::validation, idx, which);
    };

    // sigma(., 0) = 0, exact
    {
        AssumptionCheck c;
        c.name = "sigma_zero_at_zero";
        c.satisfied = true;
        for (int i = 0; i < 1000; ++i) {
            const double x = (draw(static_cast<std::uint64_t>(i), 0) - 0.5) * xspan;
            const double s = sigma.value(x, 0.0);
            if (s != 0.0) {
                c.satisfied = false;
                c.witness_x = x;
                c.observed = s;
                break;
            }
        }
        c.detail = c.satisfied ? "sigma(x,0) == 0 at 1000 sampled x" : "sigma(x,0) != 0";
        rep.checks.push_back(c);
    }

    // |sigma(x,u) - sigma(x,v)| <= L_u |u - v|
    {
        AssumptionCheck c;
        c.name = "sigma_lipschitz_u";
        c.declared = sigma.lipschitz_u();
        double worst = 0.0;
        for (int i = 0; i < sample_pairs; ++i) {
            const std::uint64_t k = static_cast<std::uint64_t>(i);
            const double u = range_lo + span * draw(k, 1);
            const double v = range_lo + span * draw(k, 2);
            const double x = (draw(k, 3) - 0.5) * xspan;
            if (u == v) continue;
            const double ratio = std::abs(sigma.value(x, u) - sigma.value(x, v)) / std::abs(u - v);
            if (ratio > worst) {
                worst = ratio;
                c.witness_u = u;
                c.witness_v = v;
                c.witness_x = x;
            }
        }
        c.observed = worst;
        c.satisfied = worst <= c.declared + 1e-12;
        c.detail = "max sampled |sigma(u)-sigma(v)|/|u-v|";
        rep.checks.push_back(c);
    }

    // |sigma(x,u) - sigma(y,u)| <= L_x |x - y| |u|
    {
        AssumptionCheck c;
        c.name = "sigma_lipschitz_x";
        c.applicable = sigma.x_dependent();
        c.declared = sigma.lipschitz_x();
        if (c.applicable) {
            double worst = 0.0;
            for (int i = 0; i < sample_pairs; ++i) {
                const std::uint64_t k = static_cast<std::uint64_t>(i);
                const double u = range_lo + span * draw(k, 4);
                const double x = (draw(k, 5) - 0.5) * xspan;
                const double y = (draw(k, 6) - 0.5) * xspan;
                if (x == y || u == 0.0) continue;
                const double ratio = std::abs(sigma.value(x, u) - sigma.value(y, u)) /
                                     (std::abs(x - y) * std::abs(u));
                if (ratio > worst) {
                    worst = ratio;
                    c.witness_u = u;
                    c.witness_x = x;
                    c.witness_v = y;
                }
            }
            c.observed = worst;
            c.satisfied = worst <= c.declared + 1e-12;
            c.detail = "max sampled |sigma(x,u)-sigma(y,u)|/(|x-y||u|)";
        } else {
            c.satisfied = true;
            c.detail = "not x-dependent";
        }
        rep.checks.push_back(c);
    }

    // |f(u)| <= C (1 + |u|^r)
    {
        AssumptionCheck c;
        c.name = "flux_polynomial_growth";
        c.declared = p.flux.growth_constant();
        const int r = p.flux.growth_exponent();
        double worst = 0.0;
        for (int i = 0; i <= 4096; ++i) {
            const double u = range_lo + span * i / 4096.0;
            const double ratio = std::abs(p.flux.value(u)) / (1.0 + std::pow(std::abs(u), r));
            if (ratio > worst) {
                worst = ratio;
                c.witness_u = u;
            }
        }
        c.observed = worst;
        c.satisfied = worst <= c.declared + 1e-12;
        c.detail = "max |f(u)| / (1 + |u|^r) on the range";
        rep.checks.push_back(c);
    }

    return rep;
}

}  // namespace sbl
