#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sbl {

/// 1-D sampled integrable function for the mollification / modulus checks.
/// Samples live at x_lo + (i + 1/2) h; outside the sample window the
/// function is either zero-extended (compact support) or periodic.
class SampledFunction {
public:
    enum class Boundary { zero_extended, periodic };

    SampledFunction(double x_lo, double h, std::vector<double> samples,
                    Boundary boundary = Boundary::zero_extended, std::string label = "custom");

    double x_lo() const { return x_lo_; }
    double h() const { return h_; }
    int size() const { return static_cast<int>(samples_.size()); }
    Boundary boundary() const { return boundary_; }
    const std::string& label() const { return label_; }
    const std::vector<double>& samples() const { return samples_; }

    double x_at(int i) const { return x_lo_ + (i + 0.5) * h_; }

    /// Boundary-aware access at any integer offset.
    double at(int i) const {
        const int n = size();
        if (i >= 0 && i < n) return samples_[static_cast<std::size_t>(i)];
        if (boundary_ == Boundary::zero_extended) return 0.0;
        i %= n;
        return samples_[static_cast<std::size_t>(i < 0 ? i + n : i)];
    }

    double l1_norm() const;

private:
    double x_lo_;
    double h_;
    std::vector<double> samples_;
    Boundary boundary_;
    std::string label_;
};

/// Built-in corpus on [-2, 2], support inside [-1.5, 1.5], n samples.
SampledFunction make_step_function(int n);
SampledFunction make_tent_function(int n);
/// Weierstrass-type sum with Hoelder exponent alpha, under a smooth envelope.
SampledFunction make_hoelder_function(int n, double alpha, int terms = 12);
/// Piecewise-constant seeded noise on a fixed 256-cell lattice, mollified at
/// the given width; resolving with larger n refines the same function.
SampledFunction make_mollified_noise_function(int n, std::uint64_t seed, double mollify_width = 0.1);
SampledFunction make_constant_function(int n, double value);

}  // namespace sbl
