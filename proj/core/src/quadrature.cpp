#include "aerokin/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace aerokin {

GaussLegendre::GaussLegendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: n must be >= 1");
    nodes.resize(n);
    weights.resize(n);
    const int m = (n + 1) / 2;
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, Newton on the Legendre recurrence
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        nodes[i] = xm - xl * z;
        nodes[n - 1 - i] = xm + xl * z;
        weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

GaussHermite::GaussHermite(int n) {
    if (n < 1) throw std::invalid_argument("GaussHermite: n must be >= 1");
    nodes.resize(n);
    weights.resize(n);
    // Roots of H_n (weight exp(-x^2)) via Newton on the orthonormal recurrence.
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * nodes[1];
        } else {
            z = 2.0 * z - nodes[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        // nodes[i] holds descending |roots| in this scheme (z decreases): store raw
        nodes[i] = z;
        weights[i] = 2.0 / (pp * pp);  // Hermite weight for exp(-x^2)
    }
    // Mirror and map to physical form: x -> sqrt(2) z, W -> sqrt(2) w e^{z^2}.
    std::vector<double> xs(n), ws(n);
    for (int i = 0; i < m; ++i) {
        double z0 = nodes[i], w0 = weights[i];
        xs[i] = -z0;  // ascending order: most negative first
        xs[n - 1 - i] = z0;
        double wphys = std::sqrt(2.0) * w0 * std::exp(z0 * z0);
        ws[i] = wphys;
        ws[n - 1 - i] = wphys;
    }
    for (int i = 0; i < n; ++i) {
        nodes[i] = std::sqrt(2.0) * xs[i];
        weights[i] = ws[i];
    }
}

VelocityQuadrature::VelocityQuadrature(int nodes_per_axis, int radial_nodes, double radial_cutoff)
    : per_axis_(nodes_per_axis), r_max_(radial_cutoff) {
    GaussHermite gh(nodes_per_axis);
    const int n = nodes_per_axis;
    nodes_.reserve(static_cast<std::size_t>(n) * n * n);
    weights_.reserve(nodes_.capacity());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                nodes_.push_back({gh.nodes[i], gh.nodes[j], gh.nodes[k]});
                weights_.push_back(gh.weights[i] * gh.weights[j] * gh.weights[k]);
            }
    GaussLegendre gl(radial_nodes, 0.0, radial_cutoff);
    radial_nodes_ = gl.nodes;
    radial_weights_.resize(gl.nodes.size());
    for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        double r = gl.nodes[j];
        radial_weights_[j] = gl.weights[j] * r * r * std::exp(-0.5 * r * r);
    }
}

SphereRule::SphereRule(int n_polar, int n_azimuth) {
    if (n_polar < 1 || n_azimuth < 1)
        throw std::invalid_argument("SphereRule: orders must be >= 1");
    GaussLegendre gl(n_polar, 0.0, 1.0);  // cos(theta) on the upper hemisphere
    nodes_.reserve(2u * n_polar * n_azimuth);
    weights_.reserve(nodes_.capacity());
    const double dphi = 2.0 * M_PI / n_azimuth;
    for (int sgn = 0; sgn < 2; ++sgn) {
        for (int i = 0; i < n_polar; ++i) {
            double t = (sgn == 0) ? gl.nodes[i] : -gl.nodes[i];
            double st = std::sqrt(std::max(0.0, 1.0 - t * t));
            for (int k = 0; k < n_azimuth; ++k) {
                double phi = (k + 0.5) * dphi;
                nodes_.push_back({st * std::cos(phi), st * std::sin(phi), t});
                weights_.push_back(gl.weights[i] * dphi);
            }
        }
    }
}

SphereRule SphereRule::aligned_to(const Vec3& axis) const {
    Vec3 a = axis / axis.norm();
    Vec3 t = std::abs(a.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 e1 = a.cross(t);
    e1 = e1 / e1.norm();
    Vec3 e2 = a.cross(e1);
    SphereRule out;
    out.weights_ = weights_;
    out.nodes_.resize(nodes_.size());
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        const Vec3& n = nodes_[j];
        out.nodes_[j] = e1 * n.x + e2 * n.y + a * n.z;
    }
    return out;
}

GaussianY3Rule::GaussianY3Rule(int n_radial, int n_polar, int n_azimuth, double r_max) {
    GaussLegendre gl(n_radial, 0.0, r_max);
    SphereRule sph(n_polar, n_azimuth);
    nodes_.reserve(gl.nodes.size() * sph.size());
    weights_.reserve(nodes_.capacity());
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        double r = gl.nodes[i];
        double wr = gl.weights[i] * r * r * std::exp(-0.5 * r * r);
        for (std::size_t j = 0; j < sph.size(); ++j) {
            nodes_.push_back(sph.nodes()[j] * r);
            weights_.push_back(wr * sph.weights()[j]);
        }
    }
}

UniformGrid3::UniformGrid3(int n_per_axis, double extent)
    : n_(n_per_axis), extent_(extent), h_(2.0 * extent / (n_per_axis - 1)) {
    if (n_per_axis < 2) throw std::invalid_argument("UniformGrid3: need >= 2 nodes per axis");
    if (extent <= 0.0) throw std::invalid_argument("UniformGrid3: extent must be positive");
}

}  // namespace aerokin
