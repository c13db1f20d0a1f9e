#ifndef AEROKIN_LIMIT_VERIFIER_HPP
#define AEROKIN_LIMIT_VERIFIER_HPP

#include <functional>
#include <string>
#include <vector>

#include "aerokin/collision_model.hpp"
#include "aerokin/collision_ops.hpp"
#include "aerokin/gas_model.hpp"
#include "aerokin/quadrature.hpp"
#include "aerokin/scaling.hpp"

namespace aerokin {

/// kappa = (1/3) int Q(|w|) |w|^2 M dw via the radial Gauss-Legendre sub-rule
/// (the integrand is radial).  Throws when the result is not positive.
double kappa(const KernelMoments& moments, const VelocityQuadrature& quad);

/// Gas fluctuation g(w) with its hydrodynamic content.
struct FluctuationField {
    std::function<double(const Vec3&)> g;

    static FluctuationField zero();
    /// rho + u.w + theta (|w|^2 - 3)/2.
    static FluctuationField hydrodynamic(double rho, const Vec3& u, double theta);
    /// Hydrodynamic part plus a traceless shear mode s12 w1 w2; the shear
    /// survives the A~-weighted friction moments that plain hydrodynamic
    /// fluctuations cannot excite (parity and angular averaging).
    static FluctuationField with_shear(double rho, const Vec3& u, double theta, double s12);
};

struct HydrodynamicMoments {
    double rho = 0.0;
    Vec3 u{0, 0, 0};
    double theta = 0.0;
};

/// rho = int g M, u = int w g M, theta = int ((1/3)|w|^2 - 1) g M.
HydrodynamicMoments hydrodynamic_projection(const FluctuationField& g,
                                            const VelocityQuadrature& quad);

/// Both sides of the viscous-flux identity
/// int A~ (w . grad_x g) M dw = nu (grad u + grad u^T) for g of hydrodynamic
/// form with velocity gradient grad_u (divergence-free).
struct ViscousFluxSides {
    Mat3 lhs;
    Mat3 rhs;
};
ViscousFluxSides viscous_flux_identity(const Mat3& grad_u, const GasModel& model,
                                       const VelocityQuadrature& quad);

/// Error metric per element of a scaling sequence.
struct LimitCurve {
    std::vector<ScalingTriple> sequence;
    std::vector<double> errors;
    std::string metric_name;

    bool strictly_decreasing_after(std::size_t start = 1) const;
};

struct LimitOptions {
    double beta = 1.0;             // diffuse-reflection parameter
    double alpha = 1.0;            // constant gas alpha for A~
    int v_grid_nodes = 21;         // particle grid per axis
    double v_grid_extent = 5.0;
    int w_nodes = 12;              // gas Gauss-Hermite per axis (moment paths)
    CollisionOpOptions op;         // apply_D quadratures for the deflection curve
    int threads = 1;
};

/// Deflection curve: relative L2 distance between eta^-1 D(F, M(1+eps g)) and
/// kappa div_v((v - u) F) along a sequence with eta << eps^2 (here
/// eps = eta^{1/3}); the divergence uses 4th-order centered differences on
/// the interior of the particle grid.
LimitCurve deflection_limit(const std::function<double(const Vec3&)>& F,
                            const FluctuationField& g, const std::vector<double>& etas,
                            const LimitOptions& opts = {});

/// Friction curve: distance between eps^-1 int w R(f, F) dw and
/// kappa (j_F - u rho_F), relative to the target unless it vanishes.
LimitCurve friction_limit(const std::function<double(const Vec3&)>& F,
                          const FluctuationField& g, const std::vector<double>& etas,
                          const LimitOptions& opts = {});

/// Friction-flux curve: mu^-1 || int A~ R(f, F) dw ||_F along an admissible
/// sequence (rejects sequences violating the scaling constraints).
LimitCurve friction_flux_limit(const std::function<double(const Vec3&)>& F,
                               const FluctuationField& g,
                               const std::vector<ScalingTriple>& sequence,
                               const LimitOptions& opts = {});

}  // namespace aerokin

#endif
