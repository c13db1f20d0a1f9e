#include "aerokin/collision_model.hpp"

#include <cmath>
#include <stdexcept>

namespace aerokin {

double half_moment_sphere(const Vec3& a, const Vec3& b) {
    const double na = a.norm(), nb = b.norm();
    const double d = na * nb;
    if (d <= 0.0) return 0.0;
    double c = a.dot(b) / d;
    c = std::clamp(c, -1.0, 1.0);
    // sin th + (pi - th) cos th with th the angle between a and b
    return d * (2.0 / 3.0) * (std::sqrt(1.0 - c * c) + c * (M_PI - std::acos(c)));
}

namespace detail {

namespace {
// arccos on [0, 1] as sqrt(1-x) * poly(x), |error| <~ 2e-8
inline double acos_poly(double x) {
    const double p = 1.5707963050 +
                     x * (-0.2145988016 +
                          x * (0.0889789874 +
                               x * (-0.0501743046 +
                                    x * (0.0308918810 +
                                         x * (-0.0170881256 +
                                              x * (0.0066700901 + x * -0.0012624911))))));
    return std::sqrt(1.0 - x) * p;
}
inline double acos_fast(double x) {
    return x >= 0.0 ? acos_poly(x) : M_PI - acos_poly(-x);
}
}  // namespace

double half_moment_sphere_fast(const Vec3& a, const Vec3& b) {
    const double d2 = a.norm2() * b.norm2();
    if (d2 <= 0.0) return 0.0;
    const double d = std::sqrt(d2);
    double c = a.dot(b) / d;
    c = std::clamp(c, -1.0, 1.0);
    return d * (2.0 / 3.0) * (std::sqrt(1.0 - c * c) + c * (M_PI - acos_fast(c)));
}

}  // namespace detail

std::pair<Vec3, Vec3> elastic_post_velocities(const Vec3& v, const Vec3& w,
                                              const Vec3& omega, const ScalingTriple& s) {
    if (s.epsilon <= 0.0)
        throw std::invalid_argument("elastic_post_velocities: eps = 0 (v'' divides by eps)");
    const double eta = s.eta, eps = s.epsilon;
    const Vec3 rel = v * eps - w;           // eps v - w, shared so momentum closes exactly
    const double proj = rel.dot(omega);
    const Vec3 vpp = v - omega * (2.0 * eta / ((1.0 + eta) * eps) * proj);
    const Vec3 wpp = w + omega * (2.0 / (1.0 + eta) * proj);
    return {vpp, wpp};
}

void ElasticCutoff::validate() const {
    if (b_star <= 1.0) throw std::invalid_argument("elastic cutoff: b_star must exceed 1");
    if (beta_star < 0.0 || beta_star > 1.0)
        throw std::invalid_argument("elastic cutoff: beta_star must lie in [0, 1]");
    if (radii.size() < 2 || mu_nodes.size() < 2)
        throw std::invalid_argument("elastic cutoff: need a 2x2 table at least");
    if (values.size() != radii.size())
        throw std::invalid_argument("elastic cutoff: row count must match radii");
    for (const auto& row : values) {
        if (row.size() != mu_nodes.size())
            throw std::invalid_argument("elastic cutoff: column count must match mu nodes");
        for (double sig : row)
            if (sig < 0.0) throw std::invalid_argument("elastic cutoff: sigma_pg must be >= 0");
    }
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1])
            throw std::invalid_argument("elastic cutoff: radii must increase");
    for (std::size_t j = 1; j < mu_nodes.size(); ++j)
        if (mu_nodes[j] <= mu_nodes[j - 1])
            throw std::invalid_argument("elastic cutoff: mu nodes must increase");
    if (mu_nodes.front() < 0.0 || mu_nodes.back() > 1.0)
        throw std::invalid_argument("elastic cutoff: mu nodes must lie in [0, 1]");
}

double ElasticCutoff::sigma(double r, double mu) const {
    mu = std::clamp(mu, mu_nodes.front(), mu_nodes.back());
    r = std::clamp(r, radii.front(), radii.back());
    std::size_t i = 1;
    while (i + 1 < radii.size() && radii[i] < r) ++i;
    std::size_t j = 1;
    while (j + 1 < mu_nodes.size() && mu_nodes[j] < mu) ++j;
    const double tr = (r - radii[i - 1]) / (radii[i] - radii[i - 1]);
    const double tm = (mu - mu_nodes[j - 1]) / (mu_nodes[j] - mu_nodes[j - 1]);
    const double v00 = values[i - 1][j - 1], v01 = values[i - 1][j];
    const double v10 = values[i][j - 1], v11 = values[i][j];
    return (1 - tr) * ((1 - tm) * v00 + tm * v01) + tr * ((1 - tm) * v10 + tm * v11);
}

CollisionModel::CollisionModel(Variant variant, ScalingTriple scaling)
    : variant_(std::move(variant)), scaling_(scaling) {
    scaling_.validate();
    if (auto* ec = std::get_if<ElasticCutoff>(&variant_)) ec->validate();
    if (auto* hs = std::get_if<ElasticHardSphere>(&variant_)) {
        if (hs->sigma_const <= 0.0)
            throw std::invalid_argument("hard sphere: sigma_const must be positive");
    }
    if (auto* in = std::get_if<InelasticDiffuse>(&variant_)) {
        if (in->beta <= 0.0) throw std::invalid_argument("inelastic: beta must be positive");
    }
}

double CollisionModel::inelastic_beta() const {
    if (auto* in = std::get_if<InelasticDiffuse>(&variant_)) return in->beta;
    throw std::logic_error("inelastic_beta: model is elastic");
}

KernelMoments CollisionModel::moments() const {
    return std::visit(
        [&](const auto& m) -> KernelMoments {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, InelasticDiffuse>)
                return moments_inelastic(m.beta);
            else
                return moments_elastic(m);
        },
        variant_);
}

double CollisionModel::elastic_kernel(const Vec3& z, const Vec3& omega) const {
    const double r = z.norm();
    if (r == 0.0) return 0.0;
    const double mu = std::abs(z.dot(omega)) / r;
    if (auto* hs = std::get_if<ElasticHardSphere>(&variant_)) return r * hs->sigma_const;
    if (auto* ec = std::get_if<ElasticCutoff>(&variant_)) return r * ec->sigma(r, mu);
    throw std::logic_error("elastic_kernel: model is inelastic");
}

double CollisionModel::sigma_total(double r) const {
    if (auto* hs = std::get_if<ElasticHardSphere>(&variant_))
        return 4.0 * M_PI * hs->sigma_const;
    if (auto* ec = std::get_if<ElasticCutoff>(&variant_)) {
        static const GaussLegendre gl(48, 0.0, 1.0);
        double s = 0.0;
        for (std::size_t j = 0; j < gl.nodes.size(); ++j)
            s += gl.weights[j] * ec->sigma(r, gl.nodes[j]);
        return 4.0 * M_PI * s;
    }
    return 1.0;  // diffuse reflection model has Sigma_pg = 1
}

KernelMoments moments_elastic(const ElasticCutoff& model, int n_gl) {
    model.validate();
    auto gl = std::make_shared<GaussLegendre>(n_gl, 0.0, 1.0);
    auto data = std::make_shared<ElasticCutoff>(model);
    auto q = [gl, data](double r) {
        double s = 0.0;
        for (std::size_t j = 0; j < gl->nodes.size(); ++j)
            s += gl->weights[j] * data->sigma(r, gl->nodes[j]);
        return 4.0 * M_PI * r * s;
    };
    auto Q = [gl, data](double r) {
        double s = 0.0;
        for (std::size_t j = 0; j < gl->nodes.size(); ++j) {
            double mu = gl->nodes[j];
            s += gl->weights[j] * data->sigma(r, mu) * mu * mu;
        }
        return 8.0 * M_PI * r * s;
    };
    double sig_max = 0.0;
    for (const auto& row : model.values)
        for (double v : row) sig_max = std::max(sig_max, v);
    return {q, Q, 8.0 * M_PI * sig_max + 1.0};
}

KernelMoments moments_elastic(const ElasticHardSphere& model) {
    const double s = model.sigma_const;
    return {[s](double r) { return 4.0 * M_PI * s * r; },
            [s](double r) { return 8.0 * M_PI / 3.0 * s * r; },
            8.0 * M_PI * s + 1.0};
}

KernelMoments moments_inelastic(double beta) {
    if (beta <= 0.0) throw std::invalid_argument("moments_inelastic: beta must be positive");
    const double q0 = std::sqrt(2.0 * M_PI) / (3.0 * beta);
    return {[](double r) { return r; },
            [q0](double r) { return q0 + r; },
            q0 + 2.0};
}

double kernel_K_pg(const Vec3& v, const Vec3& V, const Vec3& W, const ScalingTriple& s,
                   double beta) {
    const double eta = s.eta, eps = s.epsilon;
    const double op = 1.0 + eta;
    const Vec3 com = (V * eps + W * eta) / op;
    const Vec3 dev = v * eps - com;
    const double pref = 1.0 / (2.0 * M_PI * M_PI) * std::pow(op / eta, 4) *
                        std::pow(beta, 4) * eps * eps * eps;
    const double expo = std::exp(-0.5 * beta * beta * (op / eta) * (op / eta) * dev.norm2());
    return pref * expo * half_moment_sphere(V * eps - W, com - v * eps);
}

double kernel_K_gp(const Vec3& w, const Vec3& V, const Vec3& W, const ScalingTriple& s,
                   double beta) {
    const double eta = s.eta, eps = s.epsilon;
    const double op = 1.0 + eta;
    const Vec3 com = (V * eps + W * eta) / op;
    const Vec3 dev = w - com;
    const double pref = 1.0 / (2.0 * M_PI * M_PI) * std::pow(op, 4) * std::pow(beta, 4);
    const double expo = std::exp(-0.5 * beta * beta * op * op * dev.norm2());
    return pref * expo * half_moment_sphere(V * eps - W, dev);
}

namespace {
constexpr double kInv2Pi2 = 1.0 / (2.0 * M_PI * M_PI);

// Orthonormal frame with third axis along a (any frame when a = 0).
struct Frame {
    Vec3 e1, e2, e3;
    explicit Frame(const Vec3& a) {
        const double n = a.norm();
        e3 = n > 0 ? a / n : Vec3{0, 0, 1};
        Vec3 t = std::abs(e3.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        e1 = e3.cross(t);
        e1 = e1 / e1.norm();
        e2 = e3.cross(e1);
    }
    Vec3 rotate(const Vec3& u) const { return e1 * u.x + e2 * u.y + e3 * u.z; }
};
}  // namespace

InelasticKernelQuadrature::InelasticKernelQuadrature(double beta, ScalingTriple s,
                                                     int n_radial, int n_polar, int n_azimuth,
                                                     double r_max)
    : beta_(beta), s_(s), radial_(n_radial, 0.0, r_max), sphere_(n_polar, n_azimuth) {
    if (beta <= 0.0) throw std::invalid_argument("InelasticKernelQuadrature: beta must be positive");
    radial_w_.resize(radial_.nodes.size());
    for (std::size_t i = 0; i < radial_.nodes.size(); ++i) {
        double r = radial_.nodes[i];
        radial_w_[i] = radial_.weights[i] * r * r * std::exp(-0.5 * r * r);
    }
    const Vec3 e3{0, 0, 1};
    for (std::size_t i = 0; i < radial_.nodes.size(); ++i) {
        double r = radial_.nodes[i];
        for (std::size_t j = 0; j < sphere_.size(); ++j) {
            const Vec3 y = sphere_.nodes()[j] * r;
            const double w = radial_w_[i] * sphere_.weights()[j];
            const double h = half_moment_sphere(e3, y);
            t0_ += w * h;
            t1_ += w * y.z * h;
            t2a_ += w * (y.z * y.z - y.x * y.x) * h;
            t2b_ += w * y.x * y.x * h;
        }
    }
}

// Visits (y, weight) over the rule rotated so its pole follows `axis`,
// placing the endpoint singularity of the half-moment kernel at a Gauss
// panel end.
template <class Visitor>
void InelasticKernelQuadrature::for_each_aligned(const Vec3& axis, Visitor&& visit) const {
    const Frame f(axis);
    for (std::size_t i = 0; i < radial_.nodes.size(); ++i) {
        const double r = radial_.nodes[i];
        for (std::size_t j = 0; j < sphere_.size(); ++j) {
            const Vec3 y = f.rotate(sphere_.nodes()[j]) * r;
            visit(y, radial_w_[i] * sphere_.weights()[j]);
        }
    }
}

double InelasticKernelQuadrature::mass_pg(const Vec3& V, const Vec3& W) const {
    const Vec3 A = V * s_.epsilon - W;
    if (A.norm2() == 0.0) return 0.0;
    double sum = 0.0;
    for_each_aligned(A, [&](const Vec3& y, double w) { sum += w * half_moment_sphere(A, -y); });
    return kInv2Pi2 * sum;
}

Vec3 InelasticKernelQuadrature::momentum_transfer_pg(const Vec3& V, const Vec3& W) const {
    const double eta = s_.eta;
    const Vec3 A = V * s_.epsilon - W;
    if (A.norm2() == 0.0) return {0, 0, 0};
    double mass = 0.0;
    Vec3 m1{0, 0, 0};
    for_each_aligned(A, [&](const Vec3& y, double w) {
        const double h = w * half_moment_sphere(A, -y);
        mass += h;
        m1 += y * h;
    });
    mass *= kInv2Pi2;
    m1 *= kInv2Pi2;
    return A * (-(eta / (1.0 + eta)) * mass) + m1 * (eta / (beta_ * (1.0 + eta)));
}

double InelasticKernelQuadrature::spread_pg(const Vec3& V, const Vec3& W) const {
    const double eta = s_.eta;
    const Vec3 A = V * s_.epsilon - W;
    if (A.norm2() == 0.0) return 0.0;
    double sum = 0.0;
    for_each_aligned(A, [&](const Vec3& y, double w) {
        sum += w * y.norm2() * half_moment_sphere(A, -y);
    });
    const double c = eta / (beta_ * (1.0 + eta));
    return kInv2Pi2 * c * c * sum;
}

Vec3 InelasticKernelQuadrature::first_moment_gp(const Vec3& V, const Vec3& W) const {
    const double eta = s_.eta, eps = s_.epsilon;
    const Vec3 A = V * eps - W;
    if (A.norm2() == 0.0) return {0, 0, 0};
    const Vec3 b = V * eps + W * eta;
    double mass = 0.0;
    Vec3 m1{0, 0, 0};
    for_each_aligned(A, [&](const Vec3& y, double w) {
        const double h = w * half_moment_sphere(A, y);
        mass += h;
        m1 += y * h;
    });
    mass *= kInv2Pi2;
    m1 *= kInv2Pi2;
    return (m1 / beta_ + b * mass) / (1.0 + eta);
}

Vec3 InelasticKernelQuadrature::first_moment_gp_moments(const Vec3& V, const Vec3& W) const {
    const double eta = s_.eta, eps = s_.epsilon;
    const Vec3 A = V * eps - W;
    const double nA = A.norm();
    if (nA == 0.0) return {0, 0, 0};
    const Vec3 b = V * eps + W * eta;
    const double mass = kInv2Pi2 * nA * t0_;
    const Vec3 m1 = A * (kInv2Pi2 * t1_);  // |A| t1 Ahat = t1 A
    return (m1 / beta_ + b * mass) / (1.0 + eta);
}

double InelasticKernelQuadrature::moment_gp(const Vec3& V, const Vec3& W,
                                            const std::function<double(const Vec3&)>& phi) const {
    const double eta = s_.eta, eps = s_.epsilon;
    const Vec3 A = V * eps - W;
    if (A.norm2() == 0.0) return 0.0;
    const Vec3 b = V * eps + W * eta;
    double sum = 0.0;
    for_each_aligned(A, [&](const Vec3& y, double w) {
        const Vec3 out = (y / beta_ + b) / (1.0 + eta);
        sum += w * phi(out) * half_moment_sphere(A, y);
    });
    return kInv2Pi2 * sum;
}

Mat3 InelasticKernelQuadrature::a_tilde_moment_gp(const Vec3& V, const Vec3& W,
                                                  double alpha) const {
    const double eta = s_.eta, eps = s_.epsilon;
    const Vec3 A = V * eps - W;
    const double nA = A.norm();
    if (nA == 0.0) return Mat3{};
    const Vec3 b = V * eps + W * eta;
    const Vec3 ah = A / nA;
    // pair moments from the isotropic constants; beta powers come from y = beta z
    const double m0 = kInv2Pi2 * nA * t0_;
    const double m1c = kInv2Pi2 * nA * t1_ / beta_;
    const double m2a = kInv2Pi2 * nA * t2a_ / (beta_ * beta_);
    const double m2b = kInv2Pi2 * nA * t2b_ / (beta_ * beta_);
    Mat3 G = Mat3::outer(ah, ah) * m2a + Mat3::identity() * m2b;
    G += Mat3::outer(b, ah) * m1c + Mat3::outer(ah, b) * m1c;
    G += Mat3::outer(b, b) * m0;
    const double cc = 1.0 / ((1.0 + eta) * (1.0 + eta));
    G = G * cc;
    const double tr = G.trace() / 3.0;
    G(0, 0) -= tr;
    G(1, 1) -= tr;
    G(2, 2) -= tr;
    return G * alpha;
}

}  // namespace aerokin
