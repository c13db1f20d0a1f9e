#ifndef AEROKIN_COLLISION_OPS_HPP
#define AEROKIN_COLLISION_OPS_HPP

#include <functional>
#include <vector>

#include "aerokin/collision_model.hpp"
#include "aerokin/quadrature.hpp"
#include "aerokin/vec3.hpp"

namespace aerokin {

/// Scalar field sampled on a UniformGrid3; grid sums use weight h^3.
struct GridFunction3 {
    UniformGrid3 grid;
    std::vector<double> values;

    GridFunction3(UniformGrid3 g, std::vector<double> v);
    static GridFunction3 sample(const UniformGrid3& g,
                                const std::function<double(const Vec3&)>& f);

    double integral() const;
    Vec3 first_moment() const;  // int x f(x) dx
    double l2_norm() const;     // sqrt(h^3 sum f^2)
};

/// Catmull-Rom tricubic interpolation with zero extension outside the grid.
/// C^1, reproduces cubics away from the boundary; used to evaluate sampled
/// distribution functions at quadrature points between nodes.
class TricubicInterpolant {
  public:
    explicit TricubicInterpolant(const GridFunction3& f);
    double operator()(const Vec3& x) const;

  private:
    UniformGrid3 grid_;
    const std::vector<double>* values_;
    std::vector<double> owned_;
};

struct CollisionOpOptions {
    // gas-side quadrature for the inelastic deflection operator
    int w_nodes = 10;                     // Gauss-Hermite per axis
    // recoil-variable rule (radial Gauss-Legendre x sphere product rule)
    int y_radial = 10;
    int y_polar = 6;
    int y_azimuth = 8;
    double y_max = 8.0;
    // deflection-direction rule for the elastic model
    int omega_polar = 6;
    int omega_azimuth = 8;
    int threads = 1;
    double mass_mismatch_tol = 1e-4;      // gain/loss mass consistency guard
};

/// Result of a collision-operator application: the grid function plus the
/// gain/loss mass bookkeeping used by the resolution check.
struct CollisionOpResult {
    GridFunction3 field;
    double gain_mass = 0.0;
    double loss_mass = 0.0;
    double mass_mismatch() const {
        double scale = std::max(std::abs(gain_mass), std::abs(loss_mass));
        return scale > 0 ? std::abs(gain_mass - loss_mass) / scale : 0.0;
    }
};

/// Deflection operator D(F, f) on F's grid.
///
/// Inelastic model: the gain integral is evaluated in the recoil variable, in
/// which the kernel is an O(1) Gaussian; the loss represents |eps v - w| by
/// the same reduced rule so that quadrature bias cancels against the gain
/// node-by-node and the O(eta) difference survives.  Elastic model: gain by
/// the push-forward scatter of (v, w, omega) triples onto the grid.
/// Throws when the gain/loss mass mismatch exceeds the configured tolerance.
CollisionOpResult apply_D(const GridFunction3& F, const GridFunction3& f,
                          const CollisionModel& model, const CollisionOpOptions& opts = {});

/// Friction operator R(f, F) on f's grid.
///
/// Inelastic model: the gain kernel is O(1)-wide in the molecular velocity,
/// so the gas integral runs over the output grid itself and each (V, W) pair
/// row is renormalized to its exact mass q(|eps V - W|); mass balance against
/// the loss term is then exact by construction.  Elastic model: push-forward
/// scatter, sharing the triple sum with the deflection side.
CollisionOpResult apply_R(const GridFunction3& f, const GridFunction3& F,
                          const CollisionModel& model, const CollisionOpOptions& opts = {});

}  // namespace aerokin

#endif
