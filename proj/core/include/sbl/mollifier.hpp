#pragma once

#include <vector>

namespace sbl {

/// The standard compactly supported bump: exp(1/(s^2 - 1)) on |s| < 1 and 0
/// outside (unnormalized).
double standard_bump(double s);

/// 1-D normalization constant C with C * int_{-1}^{1} standard_bump = 1.
double standard_bump_norm_1d();

/// Symmetric discrete kernel: weights w_k for offsets k = -K..K sampled from
/// the bump with support radius `radius` on a grid of spacing h, then
/// renormalized to unit mass (sum w_k = 1). K = floor(radius / h).
struct DiscreteKernel {
    int radius_cells = 0;
    std::vector<double> weights;  // size 2 * radius_cells + 1, centered

    double weight(int k) const { return weights[static_cast<std::size_t>(k + radius_cells)]; }
};

/// Throws "kernel under-resolved" when radius < h (no interior sample).
DiscreteKernel sample_kernel_1d(double radius, double h);

}  // namespace sbl
