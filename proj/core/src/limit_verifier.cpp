#include "aerokin/limit_verifier.hpp"

#include <cmath>
#include <stdexcept>

#include "aerokin/parallel.hpp"

namespace aerokin {

double kappa(const KernelMoments& moments, const VelocityQuadrature& quad) {
    // int Q(|w|) |w|^2 M dw = sqrt(2/pi) int_0^inf Q(r) r^4 e^{-r^2/2} dr
    const double c = std::sqrt(2.0 / M_PI);
    const double value =
        c / 3.0 * quad.integrate_radial([&](double r) { return moments.Q(r) * r * r; });
    if (value <= 0.0)
        throw std::runtime_error("kappa: non-positive value, Q must be positive on the support");
    return value;
}

FluctuationField FluctuationField::zero() {
    return {[](const Vec3&) { return 0.0; }};
}

FluctuationField FluctuationField::hydrodynamic(double rho, const Vec3& u, double theta) {
    return {[=](const Vec3& w) { return rho + u.dot(w) + 0.5 * theta * (w.norm2() - 3.0); }};
}

FluctuationField FluctuationField::with_shear(double rho, const Vec3& u, double theta,
                                              double s12) {
    return {[=](const Vec3& w) {
        return rho + u.dot(w) + 0.5 * theta * (w.norm2() - 3.0) + s12 * w.x * w.y;
    }};
}

HydrodynamicMoments hydrodynamic_projection(const FluctuationField& g,
                                            const VelocityQuadrature& quad) {
    HydrodynamicMoments m;
    for (std::size_t j = 0; j < quad.size(); ++j) {
        const Vec3& w = quad.nodes()[j];
        const double gw = quad.weights()[j] * g.g(w) * maxwellian(w);
        m.rho += gw;
        m.u += w * gw;
        m.theta += (w.norm2() / 3.0 - 1.0) * gw;
    }
    return m;
}

ViscousFluxSides viscous_flux_identity(const Mat3& grad_u, const GasModel& model,
                                       const VelocityQuadrature& quad) {
    // g of hydrodynamic form: w . grad_x g = sum_jk w_j (d_j u_k) w_k
    ViscousFluxSides out;
    for (std::size_t n = 0; n < quad.size(); ++n) {
        const Vec3& w = quad.nodes()[n];
        double wgg = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) wgg += w[j] * grad_u(j, k) * w[k];
        out.lhs += model.a_tilde(w) * (quad.weights()[n] * maxwellian(w) * wgg);
    }
    const double nu = viscosity(model, quad);
    out.rhs = (grad_u + grad_u.transposed()) * nu;
    return out;
}

bool LimitCurve::strictly_decreasing_after(std::size_t start) const {
    for (std::size_t i = start + 1; i < errors.size(); ++i)
        if (!(errors[i] < errors[i - 1])) return false;
    return true;
}

namespace {

struct GasGH {
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    explicit GasGH(int per_axis) {
        GaussHermite gh(per_axis);
        for (double x : gh.nodes)
            for (double y : gh.nodes)
                for (double z : gh.nodes) nodes.push_back({x, y, z});
        for (double a : gh.weights)
            for (double b : gh.weights)
                for (double c : gh.weights) weights.push_back(a * b * c);
    }
};

// divergence of (v - u) F by 4th-order centered differences; evaluated on the
// interior (2-node margin), where the comparison norms are also taken
std::vector<double> divergence_vF(const GridFunction3& F, const Vec3& u) {
    const UniformGrid3& g = F.grid;
    const int n = g.n();
    const double h = g.h();
    std::vector<double> out(g.size(), 0.0);
    for (int i = 2; i < n - 2; ++i)
        for (int j = 2; j < n - 2; ++j)
            for (int k = 2; k < n - 2; ++k) {
                auto G = [&](int ii, int jj, int kk, int axis) {
                    const Vec3 v = {g.axis(ii), g.axis(jj), g.axis(kk)};
                    return (v[axis] - u[axis]) * F.values[g.index(ii, jj, kk)];
                };
                double d = 0.0;
                d += (-G(i + 2, j, k, 0) + 8 * G(i + 1, j, k, 0) - 8 * G(i - 1, j, k, 0) +
                      G(i - 2, j, k, 0));
                d += (-G(i, j + 2, k, 1) + 8 * G(i, j + 1, k, 1) - 8 * G(i, j - 1, k, 1) +
                      G(i, j - 2, k, 1));
                d += (-G(i, j, k + 2, 2) + 8 * G(i, j, k + 1, 2) - 8 * G(i, j, k - 1, 2) +
                      G(i, j, k - 2, 2));
                out[g.index(i, j, k)] = d / (12.0 * h);
            }
    return out;
}

void require_coupled_admissible(double eps, double eta) {
    if (!(eta / (eps * eps) <= 1.0))
        throw std::invalid_argument(
            "limit sequence violates eta/eps^2 <= 1 (eta/eps^2 must tend to 0)");
}

}  // namespace

LimitCurve deflection_limit(const std::function<double(const Vec3&)>& F,
                            const FluctuationField& g, const std::vector<double>& etas,
                            const LimitOptions& opts) {
    if (etas.size() < 2) throw std::invalid_argument("deflection_limit: need >= 2 elements");
    for (std::size_t i = 1; i < etas.size(); ++i)
        if (!(etas[i] < etas[i - 1]))
            throw std::invalid_argument("deflection_limit: eta sequence must decrease");

    VelocityQuadrature vq(16);
    const double kap = kappa(moments_inelastic(opts.beta), vq);
    const HydrodynamicMoments hyd = hydrodynamic_projection(g, vq);

    LimitCurve curve;
    curve.metric_name = "relative L2 of eta^-1 D(F, M(1+eps g)) vs kappa div_v((v-u) F)";
    const UniformGrid3 vgrid(opts.v_grid_nodes, opts.v_grid_extent);
    const GridFunction3 Fgrid = GridFunction3::sample(vgrid, F);
    // gas grid holds f = M (1 + eps g); extent sized to the Gauss-Hermite
    // nodes the deflection quadrature touches
    const UniformGrid3 wgrid(27, 6.75);

    for (double eta : etas) {
        const double eps = std::cbrt(eta);
        require_coupled_admissible(eps, eta);
        ScalingTriple s{eps, eta, 1.0};
        CollisionModel model(InelasticDiffuse{opts.beta}, s);
        const GridFunction3 fgrid = GridFunction3::sample(wgrid, [&](const Vec3& w) {
            return maxwellian(w) * (1.0 + eps * g.g(w));
        });
        CollisionOpOptions op = opts.op;
        op.threads = opts.threads;
        const CollisionOpResult D = apply_D(Fgrid, fgrid, model, op);
        const std::vector<double> target = divergence_vF(Fgrid, hyd.u);

        double num = 0.0, den = 0.0;
        const int n = vgrid.n();
        for (int i = 2; i < n - 2; ++i)
            for (int j = 2; j < n - 2; ++j)
                for (int k = 2; k < n - 2; ++k) {
                    const std::size_t id = vgrid.index(i, j, k);
                    const double t = kap * target[id];
                    const double d = D.field.values[id] / eta - t;
                    num += d * d;
                    den += t * t;
                }
        curve.sequence.push_back(s);
        curve.errors.push_back(std::sqrt(num / den));
    }
    return curve;
}

LimitCurve friction_limit(const std::function<double(const Vec3&)>& F,
                          const FluctuationField& g, const std::vector<double>& etas,
                          const LimitOptions& opts) {
    if (etas.empty()) throw std::invalid_argument("friction_limit: empty sequence");
    for (std::size_t i = 1; i < etas.size(); ++i)
        if (!(etas[i] < etas[i - 1]))
            throw std::invalid_argument("friction_limit: eta sequence must decrease");

    VelocityQuadrature vq(16);
    const double kap = kappa(moments_inelastic(opts.beta), vq);
    const HydrodynamicMoments hyd = hydrodynamic_projection(g, vq);

    const UniformGrid3 vgrid(opts.v_grid_nodes, opts.v_grid_extent);
    const GridFunction3 Fgrid = GridFunction3::sample(vgrid, F);
    const double rho_F = Fgrid.integral();
    const Vec3 j_F = Fgrid.first_moment();
    const Vec3 target = (j_F - hyd.u * rho_F) * kap;
    const double target_norm = target.norm();

    const GasGH gas(opts.w_nodes);
    const auto mom = moments_inelastic(opts.beta);

    LimitCurve curve;
    curve.metric_name = "eps^-1 int w R dw vs kappa (j_F - u rho_F)";
    for (double eta : etas) {
        const double eps = std::cbrt(eta);
        require_coupled_admissible(eps, eta);
        ScalingTriple s{eps, eta, 1.0};
        InelasticKernelQuadrature kq(opts.beta, s, 24, 16, 4);
        Vec3 gain{0, 0, 0}, loss{0, 0, 0};
        for (std::size_t iw = 0; iw < gas.nodes.size(); ++iw) {
            const Vec3& W = gas.nodes[iw];
            const double fw = gas.weights[iw] * maxwellian(W) * (1.0 + eps * g.g(W));
            Vec3 gsum{0, 0, 0};
            double lsum = 0.0;
            for (std::size_t iv = 0; iv < vgrid.size(); ++iv) {
                const double FV = Fgrid.values[iv];
                if (FV == 0.0) continue;
                const Vec3 V = vgrid.node(iv);
                gsum += kq.first_moment_gp_moments(V, W) * FV;
                lsum += FV * mom.q((V * eps - W).norm());
            }
            gain += gsum * (fw * vgrid.cell_weight());
            loss += W * (fw * lsum * vgrid.cell_weight());
        }
        const Vec3 value = (gain - loss) / eps;
        const double err = target_norm > 0 ? (value - target).norm() / target_norm
                                           : value.norm();
        curve.sequence.push_back(s);
        curve.errors.push_back(err);
    }
    return curve;
}

LimitCurve friction_flux_limit(const std::function<double(const Vec3&)>& F,
                               const FluctuationField& g,
                               const std::vector<ScalingTriple>& sequence,
                               const LimitOptions& opts) {
    if (sequence.size() < 2)
        throw std::invalid_argument("friction_flux_limit: need >= 2 elements");
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        sequence[i].validate();
        if (!sequence[i].theorem_admissible())
            throw std::invalid_argument(
                "friction_flux_limit: sequence element violates the scaling regime");
        if (i > 0) {
            const auto &a = sequence[i - 1], &b = sequence[i];
            if (!(b.eta / (b.epsilon * b.epsilon) < a.eta / (a.epsilon * a.epsilon)) ||
                !(b.epsilon / (b.mu * b.mu) < a.epsilon / (a.mu * a.mu)))
                throw std::invalid_argument(
                    "friction_flux_limit: scaling ratios must decrease strictly");
        }
    }

    const UniformGrid3 vgrid(opts.v_grid_nodes, opts.v_grid_extent);
    const GridFunction3 Fgrid = GridFunction3::sample(vgrid, F);
    const GasGH gas(opts.w_nodes);
    const auto mom = moments_inelastic(opts.beta);

    LimitCurve curve;
    curve.metric_name = "mu^-1 || int A~ R dw ||_F";
    for (const ScalingTriple& s : sequence) {
        InelasticKernelQuadrature kq(opts.beta, s, 32, 24, 4);
        Mat3 gain, loss;
        for (std::size_t iw = 0; iw < gas.nodes.size(); ++iw) {
            const Vec3& W = gas.nodes[iw];
            const double fw =
                gas.weights[iw] * maxwellian(W) * (1.0 + s.epsilon * g.g(W));
            Mat3 gsum;
            double lsum = 0.0;
            for (std::size_t iv = 0; iv < vgrid.size(); ++iv) {
                const double FV = Fgrid.values[iv];
                if (FV == 0.0) continue;
                const Vec3 V = vgrid.node(iv);
                gsum += kq.a_tilde_moment_gp(V, W, opts.alpha) * FV;
                lsum += FV * mom.q((V * s.epsilon - W).norm());
            }
            gain += gsum * (fw * vgrid.cell_weight());
            loss += tensor_A(W) * (opts.alpha * fw * lsum * vgrid.cell_weight());
        }
        curve.sequence.push_back(s);
        curve.errors.push_back((gain - loss).frobenius_norm() / s.mu);
    }
    return curve;
}

}  // namespace aerokin
