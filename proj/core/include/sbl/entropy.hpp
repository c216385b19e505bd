#pragma once

#include <string>

#include "sbl/field.hpp"
#include "sbl/flux_model.hpp"
#include "sbl/solver.hpp"

namespace sbl {

/// Value and first two derivatives at one point.
struct EtaRhoEval {
    double value;
    double d1;
    double d2;
};

/// C^2 approximation of |r| built from the fixed even profile with
/// eta_bar''(s) = (15/8)(1 - s^2)^2 on [-1, 1]:
///
///   eta_rho(r) = rho * eta_bar(r / rho),
///   |r| - M1 rho <= eta_rho(r) <= |r|,   |eta_rho''| <= (M2/rho) 1_{|r|<rho},
///
/// with M1 = 5/16 and M2 = 15/8 exactly for this profile.
struct EntropyApprox {
    double rho;

    static constexpr double M1 = 5.0 / 16.0;
    static constexpr double M2 = 15.0 / 8.0;

    explicit EntropyApprox(double rho_);
    EtaRhoEval operator()(double r) const;
};

/// eta_rho(r) with value, first and second derivative; rho must be > 0.
EtaRhoEval eta_rho(double r, double rho);

/// sgn(u - v) (f(u) - f(v)); equal for each axis of the isotropic flux, so
/// the common component is returned.
double kruzkov_flux(double u, double v, const FluxModel& flux);

/// q_rho(u, v) = int_v^u eta_rho'(xi - v) f'(xi) dxi by adaptive quadrature
/// (split at the kinks xi = v +- rho) to the given absolute tolerance.
double entropy_flux_q(double u, double v, const FluxModel& flux, double rho,
                      double abs_tol = 1e-10);

/// d/du q_rho(u, v) = eta_rho'(u - v) f'(u), closed form.
double entropy_flux_q_du(double u, double v, const FluxModel& flux, double rho);

/// d/du q_rho(v, u) = int_v^u eta_rho''(xi - u) f'(xi) dxi by quadrature.
double entropy_flux_q_swapped_du(double u, double v, const FluxModel& flux, double rho,
                                 double abs_tol = 1e-10);

/// Convex C^2 entropy used in the discrete entropy-inequality residual.
class ResidualEntropy {
public:
    enum class Kind { kruzkov, square, linear };

    /// eta(u) = eta_rho(u - center)
    static ResidualEntropy kruzkov(double rho, double center);
    /// eta(u) = u^2
    static ResidualEntropy square();
    /// eta(u) = u (conservation check; the inequality degenerates)
    static ResidualEntropy linear();

    Kind kind() const { return kind_; }
    double rho() const { return rho_; }
    double center() const { return center_; }
    std::string label() const;

    double value(double u) const;
    double d1(double u) const;
    double d2(double u) const;

private:
    Kind kind_ = Kind::linear;
    double rho_ = 0.0;
    double center_ = 0.0;
};

/// Discrete value of the entropy-inequality functional between times s and t
/// (snapped to the nearest recorded snapshots): explicit boundary terms,
/// entropy flux tested against the centered gradient of phi, the Ito
/// correction, and the left-endpoint martingale sum. A nonnegative value
/// means the inequality holds for this path and test function.
///
/// The trajectory must have been recorded with record_every_step (or dense
/// snapshots); phi must be nonnegative on the same grid.
double entropy_residual(const Trajectory& traj, const ResidualEntropy& eta, const Field& phi,
                        double s, double t);

/// Smooth nonnegative compactly supported test function on the torus,
/// centered at the given fraction of the domain.
Field make_test_bump(const Grid& grid, double center_fraction, double width_fraction,
                     double height = 1.0);

}  // namespace sbl
