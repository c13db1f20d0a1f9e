#include "aerokin/gas_model.hpp"

#include <cmath>
#include <stdexcept>

namespace aerokin {

double maxwellian(const Vec3& w) {
    return std::pow(2.0 * M_PI, -1.5) * std::exp(-0.5 * w.norm2());
}

Mat3 tensor_A(const Vec3& w) {
    Mat3 A;
    const double n2 = w.norm2();
    const double third = n2 / 3.0;
    A(0, 0) = w.x * w.x - third;
    A(1, 1) = w.y * w.y - third;
    A(2, 2) = -(A(0, 0) + A(1, 1));  // exact zero trace
    A(0, 1) = A(1, 0) = w.x * w.y;
    A(0, 2) = A(2, 0) = w.x * w.z;
    A(1, 2) = A(2, 1) = w.y * w.z;
    return A;
}

GasModel GasModel::constant_alpha(double alpha, double gamma, double c_star) {
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
    if (gamma < 0 || gamma > 1) throw std::invalid_argument("gamma must lie in [0, 1]");
    if (c_star <= 1) throw std::invalid_argument("c_star must exceed 1");
    GasModel m;
    m.constant_ = true;
    m.alpha0_ = alpha;
    m.gamma_ = gamma;
    m.c_star_ = c_star;
    m.check_assumption_a2();
    return m;
}

GasModel GasModel::tabulated_alpha(std::vector<double> radii, std::vector<double> values,
                                   double gamma, double c_star) {
    if (radii.size() != values.size() || radii.size() < 2)
        throw std::invalid_argument("tabulated alpha needs >= 2 (r, value) pairs");
    if (gamma < 0 || gamma > 1) throw std::invalid_argument("gamma must lie in [0, 1]");
    if (c_star <= 1) throw std::invalid_argument("c_star must exceed 1");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (values[i] <= 0) throw std::invalid_argument("alpha(r) must stay positive");
        if (i > 0 && radii[i] <= radii[i - 1])
            throw std::invalid_argument("alpha table radii must increase");
    }
    if (radii.front() != 0.0)
        throw std::invalid_argument("alpha table must start at r = 0");
    GasModel m;
    m.constant_ = false;
    m.gamma_ = gamma;
    m.c_star_ = c_star;
    m.r_ = std::move(radii);
    m.v_ = std::move(values);

    // Fritsch-Carlson monotone cubic slopes
    const std::size_t n = m.r_.size();
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        d[i] = (m.v_[i + 1] - m.v_[i]) / (m.r_[i + 1] - m.r_[i]);
    m.slope_.assign(n, 0.0);
    m.slope_[0] = d[0];
    m.slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m.slope_[i] = 0.0;
        } else {
            double w1 = 2.0 * (m.r_[i + 1] - m.r_[i]) + (m.r_[i] - m.r_[i - 1]);
            double w2 = (m.r_[i + 1] - m.r_[i]) + 2.0 * (m.r_[i] - m.r_[i - 1]);
            m.slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    m.check_assumption_a2();
    return m;
}

double GasModel::alpha(double r) const {
    if (constant_) return alpha0_;
    if (r <= r_.front()) return v_.front();
    if (r >= r_.back()) {
        if (r > r_.back()) extrapolated_ = true;  // flat extension keeps the A2 bound
        return v_.back();
    }
    std::size_t hi = 1;
    while (r_[hi] < r) ++hi;
    std::size_t lo = hi - 1;
    double h = r_[hi] - r_[lo];
    double t = (r - r_[lo]) / h;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    double h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t);
    double h11 = t * t * (t - 1);
    return h00 * v_[lo] + h10 * h * slope_[lo] + h01 * v_[hi] + h11 * h * slope_[hi];
}

Mat3 GasModel::a_tilde(const Vec3& w) const {
    return tensor_A(w) * alpha(w.norm());
}

void GasModel::check_assumption_a2() {
    // |A~| and a finite-difference |grad A~| against C (1 + |w|^2) on samples
    double c_needed = 0.0;
    const double dh = 1e-4;
    for (int i = 0; i <= 60; ++i) {
        double r = 0.2 * i;
        Vec3 w{r / std::sqrt(3.0), r / std::sqrt(3.0), r / std::sqrt(3.0)};
        double bound = 1.0 + w.norm2();
        double norm_at = a_tilde(w).frobenius_norm();
        c_needed = std::max(c_needed, norm_at / bound);
        for (int ax = 0; ax < 3; ++ax) {
            Vec3 wp = w, wm = w;
            wp[ax] += dh;
            wm[ax] -= dh;
            double g = (a_tilde(wp) - a_tilde(wm)).frobenius_norm() / (2 * dh);
            c_needed = std::max(c_needed, g / bound);
        }
    }
    growth_constant_ = c_needed;
    growth_ok_ = std::isfinite(c_needed);
    extrapolated_ = false;  // probing above the table is not user extrapolation
    if (!growth_ok_) throw std::invalid_argument("alpha violates the A2 growth bound");
}

double viscosity(const GasModel& model, const VelocityQuadrature& quad) {
    double nu;
    if (model.is_constant()) {
        nu = 0.1 * quad.integrate([&](const Vec3& w) {
            const Mat3 At = model.a_tilde(w);
            const Mat3 A = tensor_A(w);
            return At.ddot(A) * maxwellian(w);
        });
    } else {
        // radial integrand: (1/10) alpha(r) (2/3) r^4 M -> 1D rule
        const double c = std::pow(2.0 * M_PI, -1.5) * 4.0 * M_PI;
        nu = 0.1 * c * quad.integrate_radial([&](double r) {
            // |w|^4 from A:A plus the rule's r^2 e^{-r^2/2} radial weight
            return model.alpha(r) * (2.0 / 3.0) * r * r * r * r;
        });
    }
    if (nu <= 0.0) throw std::runtime_error("viscosity: non-positive result, quadrature unresolved");
    return nu;
}

}  // namespace aerokin
