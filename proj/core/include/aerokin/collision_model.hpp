#ifndef AEROKIN_COLLISION_MODEL_HPP
#define AEROKIN_COLLISION_MODEL_HPP

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "aerokin/quadrature.hpp"
#include "aerokin/scaling.hpp"
#include "aerokin/vec3.hpp"

namespace aerokin {

/// int_{S^2} (n.a)_+ (n.b)_+ dn.
///
/// Reduces to |a||b| (2/3) [sin th + (pi - th) cos th] with th the angle
/// between a and b; the closed form is cross-checked against Monte Carlo and
/// sphere-rule quadrature in the test suite.  Symmetric, bilinear in the
/// magnitudes, zero when either argument vanishes or the supports are
/// disjoint (b = -a).
double half_moment_sphere(const Vec3& a, const Vec3& b);

namespace detail {
/// Hot-loop variant of half_moment_sphere with a polynomial arccos
/// (absolute error ~2e-8, far below the quadrature error of the operators
/// that use it).  Reference paths keep the libm version.
double half_moment_sphere_fast(const Vec3& a, const Vec3& b);
}  // namespace detail

/// Elastic post-collision velocities for particle v and molecule w, unit
/// deflection direction omega.  eps v + eta w is conserved exactly.
/// Throws when eps = 0 (the v'' formula divides by eps).
std::pair<Vec3, Vec3> elastic_post_velocities(const Vec3& v, const Vec3& w,
                                              const Vec3& omega, const ScalingTriple& s);

/// Radial collision-rate q and momentum-transfer rate Q with the linear
/// growth constant bound_constant (q <= C (1+r), Q + |Q'| <= C (1+r)).
struct KernelMoments {
    std::function<double(double)> q;
    std::function<double(double)> Q;
    double bound_constant = 0.0;
};

struct ElasticHardSphere {
    double sigma_const = 1.0 / (4.0 * M_PI);  // sigma_pg; 1/(4pi) gives Sigma_pg = 1
};

/// Cutoff hard-potential cross-section sigma_pg(r, mu), tabulated on a
/// rectangular (r, mu) table, bilinearly interpolated, constant in r beyond
/// the last radius.
struct ElasticCutoff {
    double b_star = 2.0;    // kernel bound, > 1
    double beta_star = 1.0; // hard-potential exponent in [0, 1]
    std::vector<double> radii;
    std::vector<double> mu_nodes;                // cos-angle magnitude in [0, 1]
    std::vector<std::vector<double>> values;     // values[i][j] = sigma(r_i, mu_j)

    double sigma(double r, double mu) const;
    void validate() const;
};

struct InelasticDiffuse {
    double beta = 1.0;  // inverse thermal speed of re-emitted molecules, > 0
};

class CollisionModel {
  public:
    using Variant = std::variant<ElasticHardSphere, ElasticCutoff, InelasticDiffuse>;

    CollisionModel(Variant variant, ScalingTriple scaling);

    const Variant& variant() const { return variant_; }
    const ScalingTriple& scaling() const { return scaling_; }
    bool is_inelastic() const { return std::holds_alternative<InelasticDiffuse>(variant_); }
    double inelastic_beta() const;

    /// q and Q of hypotheses (H1)-(H2): closed form for the inelastic model
    /// (Proposition 2), cross-section moments for the elastic models.
    KernelMoments moments() const;

    /// Elastic kernel b(z, omega) = |z| sigma(|z|, |cos(z, omega)|).
    double elastic_kernel(const Vec3& z, const Vec3& omega) const;
    /// Sigma_pg(r) = 4 pi int_0^1 sigma(r, mu) dmu (loss-term cross-section).
    double sigma_total(double r) const;

  private:
    Variant variant_;
    ScalingTriple scaling_;
};

/// q(r) = 4 pi int_0^1 r sigma(r, mu) dmu, Q(r) = 8 pi int_0^1 r sigma mu^2 dmu
/// by Gauss-Legendre in mu.
KernelMoments moments_elastic(const ElasticCutoff& model, int n_gl = 48);
KernelMoments moments_elastic(const ElasticHardSphere& model);

/// q(r) = r, Q(r) = sqrt(2 pi)/(3 beta) + r.
KernelMoments moments_inelastic(double beta);

/// Diffuse-reflection kernel K_pg of the particle-deflection operator,
/// evaluated exactly as defined (the n-integral via half_moment_sphere).
double kernel_K_pg(const Vec3& v, const Vec3& V, const Vec3& W, const ScalingTriple& s,
                   double beta);
/// Diffuse-reflection kernel K_gp of the molecular-friction operator.
double kernel_K_gp(const Vec3& w, const Vec3& V, const Vec3& W, const ScalingTriple& s,
                   double beta);

/// Reduced-variable quadratures of the diffuse-reflection kernels.
///
/// K_pg is a Gaussian of width O(eta/eps) around the center of mass in v, so
/// v-integrals are computed in the recoil variable y (an O(1) Gaussian), with
/// a radial Gauss-Legendre times sphere product rule aligned per pair with
/// the relative velocity eps V - W.  Isotropic moment constants of the
/// half-moment kernel (T0..T2) are precomputed once and give closed moment
/// formulas used by the friction/flux curves.
class InelasticKernelQuadrature {
  public:
    InelasticKernelQuadrature(double beta, ScalingTriple s, int n_radial = 32,
                              int n_polar = 24, int n_azimuth = 4, double r_max = 10.0);

    const ScalingTriple& scaling() const { return s_; }
    double beta() const { return beta_; }

    /// int K_pg(v, V, W) dv (equals int K_gp dw; (H1) predicts q(|eps V - W|)).
    double mass_pg(const Vec3& V, const Vec3& W) const;
    /// eps int (v - V) K_pg dv ((H2) predicts -(eta/(1+eta)) A Q(|A|)).
    Vec3 momentum_transfer_pg(const Vec3& V, const Vec3& W) const;
    /// int |eps v - (eps V + eta W)/(1+eta)|^2 K_pg dv (the (H3) integrand).
    double spread_pg(const Vec3& V, const Vec3& W) const;
    /// int w K_gp dw by the per-pair aligned rule.
    Vec3 first_moment_gp(const Vec3& V, const Vec3& W) const;
    /// Same moment closed with the precomputed isotropic constants; used by
    /// the limit curves where the pair count is large.
    Vec3 first_moment_gp_moments(const Vec3& V, const Vec3& W) const;
    /// int phi(w) K_gp dw for scalar phi, by direct reduced quadrature.
    double moment_gp(const Vec3& V, const Vec3& W,
                     const std::function<double(const Vec3&)>& phi) const;
    /// int A~(w) K_gp dw for A~ = alpha A with constant alpha (quadratic in w,
    /// so the precomputed isotropic moments close the integral).
    Mat3 a_tilde_moment_gp(const Vec3& V, const Vec3& W, double alpha) const;

    /// Moment constants of int y^{(k)} e^{-|y|^2/2} HM(e, y) dy (isotropic
    /// frame); T0 = 2 pi^2 analytically, exposed for validation.
    double T0() const { return t0_; }
    double T1() const { return t1_; }
    double T2_aniso() const { return t2a_; }
    double T2_iso() const { return t2b_; }

  private:
    double beta_;
    ScalingTriple s_;
    GaussLegendre radial_;
    SphereRule sphere_;
    std::vector<double> radial_w_;  // absorb r^2 e^{-r^2/2}
    double t0_ = 0.0, t1_ = 0.0, t2a_ = 0.0, t2b_ = 0.0;

    template <class Visitor>
    void for_each_aligned(const Vec3& axis, Visitor&& visit) const;
};

}  // namespace aerokin

#endif
