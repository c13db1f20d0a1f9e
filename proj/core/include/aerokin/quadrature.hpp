#ifndef AEROKIN_QUADRATURE_HPP
#define AEROKIN_QUADRATURE_HPP

#include <cstddef>
#include <vector>

#include "aerokin/vec3.hpp"

namespace aerokin {

/// Nodes/weights of an n-point Gauss-Legendre rule on [a, b].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    GaussLegendre(int n, double a, double b);
};

/// 1D Gauss-Hermite rule in "physical" form: sum w_j f(x_j) ~ int f(x) dx
/// for f = polynomial * exp(-x^2/2).
struct GaussHermite {
    std::vector<double> nodes;    // symmetric about 0
    std::vector<double> weights;  // include the exp(+x^2/2) factor

    explicit GaussHermite(int n);
};

/// Tensor-product velocity quadrature against plain dw, built from
/// Gauss-Hermite per axis so that Maxwellian-weighted moments are exact for
/// polynomials.  Carries an auxiliary high-order radial Gauss-Legendre rule
/// for radial integrands such as |w|^3 where the tensor rule converges too
/// slowly (see viscosity/kappa).
class VelocityQuadrature {
  public:
    explicit VelocityQuadrature(int nodes_per_axis = 24, int radial_nodes = 64,
                                double radial_cutoff = 14.0);

    const std::vector<Vec3>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return nodes_.size(); }
    int nodes_per_axis() const { return per_axis_; }
    double radial_cutoff() const { return r_max_; }

    /// sum_j w_j f(node_j), fixed summation order.
    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t j = 0; j < nodes_.size(); ++j) s += weights_[j] * f(nodes_[j]);
        return s;
    }

    /// int_0^inf g(r) r^2 exp(-r^2/2) dr by the auxiliary radial rule.
    template <class G>
    double integrate_radial(G&& g) const {
        double s = 0.0;
        for (std::size_t j = 0; j < radial_nodes_.size(); ++j)
            s += radial_weights_[j] * g(radial_nodes_[j]);
        return s;
    }

  private:
    int per_axis_;
    double r_max_;
    std::vector<Vec3> nodes_;
    std::vector<double> weights_;
    std::vector<double> radial_nodes_;
    std::vector<double> radial_weights_;  // absorb r^2 exp(-r^2/2)
};

/// Fixed-order product rule on S^2, split at the equator so kernels with an
/// |cos| kink there are handled cleanly when the pole is aligned with the
/// kink axis.  Node set is closed under n -> -n; weights sum to 4 pi.
class SphereRule {
  public:
    /// n_polar Gauss points per hemisphere, n_azimuth equispaced midpoints.
    SphereRule(int n_polar, int n_azimuth);

    const std::vector<Vec3>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return nodes_.size(); }

    /// Copy of the rule rotated so the pole e3 maps to `axis` (unit).
    SphereRule aligned_to(const Vec3& axis) const;

  private:
    SphereRule() = default;
    std::vector<Vec3> nodes_;
    std::vector<double> weights_;
};

/// Quadrature for int G(y) exp(-|y|^2/2) dy built as radial Gauss-Legendre on
/// [0, r_max] times a SphereRule.  Weights absorb r^2 exp(-r^2/2).
class GaussianY3Rule {
  public:
    GaussianY3Rule(int n_radial, int n_polar, int n_azimuth, double r_max = 8.0);

    const std::vector<Vec3>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return nodes_.size(); }

    template <class G>
    double integrate(G&& g) const {
        double s = 0.0;
        for (std::size_t j = 0; j < nodes_.size(); ++j) s += weights_[j] * g(nodes_[j]);
        return s;
    }

  private:
    std::vector<Vec3> nodes_;
    std::vector<double> weights_;
};

/// Uniform cubic velocity grid on [-extent, extent]^3 with n nodes per axis.
/// Grid sums with weight h^3 are trapezoid-accurate for decaying integrands.
class UniformGrid3 {
  public:
    UniformGrid3(int n_per_axis, double extent);

    int n() const { return n_; }
    double extent() const { return extent_; }
    double h() const { return h_; }
    double cell_weight() const { return h_ * h_ * h_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

    double axis(int i) const { return -extent_ + h_ * i; }
    Vec3 node(std::size_t flat) const {
        int k = static_cast<int>(flat % n_);
        int j = static_cast<int>((flat / n_) % n_);
        int i = static_cast<int>(flat / (static_cast<std::size_t>(n_) * n_));
        return {axis(i), axis(j), axis(k)};
    }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
    }

  private:
    int n_;
    double extent_;
    double h_;
};

}  // namespace aerokin

#endif
