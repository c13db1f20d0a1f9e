#ifndef AEROKIN_GAS_MODEL_HPP
#define AEROKIN_GAS_MODEL_HPP

#include <vector>

#include "aerokin/quadrature.hpp"
#include "aerokin/vec3.hpp"

namespace aerokin {

/// Centered reduced Maxwellian (2 pi)^{-3/2} exp(-|w|^2/2).
double maxwellian(const Vec3& w);

/// Traceless part of w (x) w.  trace(tensor_A(w)) == 0 exactly: the (2,2)
/// entry is computed as -(d00 + d11).
Mat3 tensor_A(const Vec3& w);

/// Linearized gas data: the radial factor alpha of A~ = alpha(|w|) A, either
/// a positive constant (Maxwell molecules) or a tabulated radial function
/// interpolated monotone-cubically with constant extrapolation past the
/// table end.  gamma and c_star are the hard-potential cutoff data; they are
/// carried for reporting, the linearized problem never evaluates the kernel.
class GasModel {
  public:
    static GasModel constant_alpha(double alpha, double gamma = 0.0, double c_star = 2.0);
    static GasModel tabulated_alpha(std::vector<double> radii, std::vector<double> values,
                                    double gamma = 0.0, double c_star = 2.0);

    double alpha(double r) const;
    bool is_constant() const { return constant_; }
    double hard_potential_exponent() const { return gamma_; }
    double kernel_bound() const { return c_star_; }
    /// True once alpha(r) > 0 and the growth bound |A~|, |grad A~| <= C(1+|w|^2)
    /// held on the construction-time sample grid.
    bool growth_bound_ok() const { return growth_ok_; }
    double growth_constant() const { return growth_constant_; }
    /// Set when a tabulated alpha was evaluated beyond its last radius.
    bool extrapolated() const { return extrapolated_; }

    Mat3 a_tilde(const Vec3& w) const;

  private:
    GasModel() = default;
    void check_assumption_a2();

    bool constant_ = true;
    double alpha0_ = 1.0;
    double gamma_ = 0.0;
    double c_star_ = 2.0;
    std::vector<double> r_, v_, slope_;  // pchip data
    double growth_constant_ = 0.0;
    bool growth_ok_ = true;
    mutable bool extrapolated_ = false;
};

/// Viscosity nu = (1/10) int A~ : A  M dw, using the defining relation
/// L A~ = A so the integrand is alpha(|w|) A:A M.  The tensor rule is exact
/// for constant alpha; tabulated alpha uses the radial Gauss-Legendre
/// sub-rule since the integrand is radial.
double viscosity(const GasModel& model, const VelocityQuadrature& quad);

}  // namespace aerokin

#endif
