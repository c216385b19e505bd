#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sbl/sampled_function.hpp"
#include "sbl/weight_function.hpp"

namespace sbl {

/// h_delta(x) = int J_{delta/2}(y) h(x + y) dy with the sampled kernel
/// renormalized to unit mass; preserves constants and discrete mass exactly.
/// Requires delta >= 2h.
SampledFunction mollify(const SampledFunction& f, double delta);

/// omega(delta) = sup over grid shifts |z| <= delta of
/// sum |h(x+z) - h(x)| psi(x) h.
double modulus_omega(const SampledFunction& f, double delta, const WeightFunction& psi);

/// int int |h(x+z) - h(x-z)| J_delta(z) psi(x) dx dz with the discrete
/// unit-mass kernel. Requires delta >= 2h.
double symmetric_dual_pairing(const SampledFunction& f, double delta, const WeightFunction& psi);

struct DeltaRatioRow {
    double delta = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

struct RatioReport {
    std::string function_label;
    std::string inequality;  // "sob_to_trans" or "trans_to_sob"
    double r = 0.0;
    double s = 0.0;
    std::vector<DeltaRatioRow> rows;
    double max_ratio = 0.0;  // empirical constant
};

/// Smoothing-to-translation comparison: for each delta the pairing above is
/// compared against delta^r * sup_{|z| <= delta} |z|^{-s} of the symmetric
/// translation integral; reports the per-delta ratios and their maximum.
/// Requires 0 < r < s < 1 and every delta >= 4h.
RatioReport check_sob_to_trans(const SampledFunction& f, const WeightFunction& psi, double r,
                               double s, const std::vector<double>& delta_grid);

/// Translation-to-smoothing comparison: per delta, the translation modulus
/// against delta^r * [sup over dyadic delta' in [4h, 1] of delta'^{-s}
/// pairing] + delta^r ||h||_L1.
RatioReport check_trans_to_sob(const SampledFunction& f, const WeightFunction& psi, double r,
                               double s, const std::vector<double>& delta_grid);

/// CSV rows: function label, delta, lhs, rhs, ratio.
void write_ratio_csv(std::ostream& os, const std::vector<RatioReport>& reports);

}  // namespace sbl
