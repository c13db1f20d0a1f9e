#include "aerokin/collision_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "aerokin/gas_model.hpp"
#include "aerokin/parallel.hpp"

namespace aerokin {

GridFunction3::GridFunction3(UniformGrid3 g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw std::invalid_argument("GridFunction3: value count does not match grid");
}

GridFunction3 GridFunction3::sample(const UniformGrid3& g,
                                    const std::function<double(const Vec3&)>& f) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.node(i));
    return {g, std::move(v)};
}

double GridFunction3::integral() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.cell_weight();
}

Vec3 GridFunction3::first_moment() const {
    Vec3 m{0, 0, 0};
    for (std::size_t i = 0; i < values.size(); ++i) m += grid.node(i) * values[i];
    return m * grid.cell_weight();
}

double GridFunction3::l2_norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s * grid.cell_weight());
}

TricubicInterpolant::TricubicInterpolant(const GridFunction3& f)
    : grid_(f.grid), values_(&f.values) {}

namespace {
inline void catmull_rom_weights(double t, double w[4]) {
    const double t2 = t * t, t3 = t2 * t;
    w[0] = 0.5 * (-t3 + 2 * t2 - t);
    w[1] = 0.5 * (3 * t3 - 5 * t2 + 2);
    w[2] = 0.5 * (-3 * t3 + 4 * t2 + t);
    w[3] = 0.5 * (t3 - t2);
}
}  // namespace

double TricubicInterpolant::operator()(const Vec3& x) const {
    const int n = grid_.n();
    const double h = grid_.h();
    double wx[4], wy[4], wz[4];
    int ix[3];
    double t[3];
    for (int a = 0; a < 3; ++a) {
        double s = (x[a] + grid_.extent()) / h;
        double fl = std::floor(s);
        ix[a] = static_cast<int>(fl);
        t[a] = s - fl;
        if (ix[a] < -3 || ix[a] > n + 1) return 0.0;  // fully outside with margin
    }
    catmull_rom_weights(t[0], wx);
    catmull_rom_weights(t[1], wy);
    catmull_rom_weights(t[2], wz);
    const std::vector<double>& v = *values_;
    double sum = 0.0;
    for (int a = 0; a < 4; ++a) {
        const int i = ix[0] - 1 + a;
        if (i < 0 || i >= n) continue;
        double sy = 0.0;
        for (int b = 0; b < 4; ++b) {
            const int j = ix[1] - 1 + b;
            if (j < 0 || j >= n) continue;
            double sz = 0.0;
            for (int c = 0; c < 4; ++c) {
                const int k = ix[2] - 1 + c;
                if (k < 0 || k >= n) continue;
                sz += wz[c] * v[grid_.index(i, j, k)];
            }
            sy += wy[b] * sz;
        }
        sum += wx[a] * sy;
    }
    return sum;
}

namespace {

constexpr double kInv2Pi2 = 1.0 / (2.0 * M_PI * M_PI);

struct YRule {
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    YRule(const CollisionOpOptions& o) {
        GaussianY3Rule rule(o.y_radial, o.y_polar, o.y_azimuth, o.y_max);
        nodes = rule.nodes();
        weights = rule.weights();
    }
};

struct GasNodes {
    std::vector<Vec3> nodes;
    std::vector<double> weights;  // plain dW weights
    explicit GasNodes(int per_axis) {
        GaussHermite gh(per_axis);
        for (double xi : gh.nodes)
            for (double yj : gh.nodes)
                for (double zk : gh.nodes) nodes.push_back({xi, yj, zk});
        for (double wi : gh.weights)
            for (double wj : gh.weights)
                for (double wk : gh.weights) weights.push_back(wi * wj * wk);
    }
};

CollisionOpResult apply_D_inelastic(const GridFunction3& F, const GridFunction3& f,
                                    const CollisionModel& model,
                                    const CollisionOpOptions& opts) {
    const ScalingTriple s = model.scaling();
    const double beta = model.inelastic_beta();
    const double eps = s.epsilon, eta = s.eta;
    if (eps <= 0.0) throw std::invalid_argument("apply_D: eps must be positive");

    const YRule yr(opts);
    const GasNodes gas(opts.w_nodes);
    const TricubicInterpolant Fi(F), fi(f);

    // gas samples: f at the Gauss-Hermite nodes (interpolated once)
    std::vector<double> fW(gas.nodes.size());
    for (std::size_t k = 0; k < gas.nodes.size(); ++k)
        fW[k] = fi(gas.nodes[k]) * gas.weights[k];

    const double sfac = eta / (beta * (1.0 + eta));
    const double pref_gain = std::pow(1.0 + eta, 4) * kInv2Pi2;
    const std::size_t nv = F.grid.size();
    std::vector<double> out(nv, 0.0), gain_arr(nv, 0.0), loss_arr(nv, 0.0);

    parallel_for(nv, opts.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t iv = lo; iv < hi; ++iv) {
            const Vec3 v = F.grid.node(iv);
            const Vec3 ev = v * eps;
            const double Fv = F.values[iv];
            double gain = 0.0, lossq = 0.0;
            for (std::size_t k = 0; k < gas.nodes.size(); ++k) {
                const Vec3& W = gas.nodes[k];
                const double fw = fW[k];
                if (fw == 0.0) continue;
                const Vec3 C0 = ev - W;
                const Vec3 base = v * (1.0 + eta) - W * (eta / eps);
                double gsum = 0.0, lsum = 0.0;
                for (std::size_t jy = 0; jy < yr.nodes.size(); ++jy) {
                    const Vec3& y = yr.nodes[jy];
                    const double wy = yr.weights[jy];
                    const double h1 = detail::half_moment_sphere_fast(C0 - y * sfac, -y);
                    const Vec3 V = base - y * (eta / (beta * eps));
                    gsum += wy * h1 * Fi(V);
                    lsum += wy * detail::half_moment_sphere_fast(C0, -y);
                }
                gain += fw * gsum;
                lossq += fw * lsum;
            }
            gain *= pref_gain;
            const double loss = kInv2Pi2 * Fv * lossq;
            gain_arr[iv] = gain;
            loss_arr[iv] = loss;
            out[iv] = gain - loss;
        }
    });

    double gm = 0.0, lm = 0.0;
    for (std::size_t i = 0; i < nv; ++i) {
        gm += gain_arr[i];
        lm += loss_arr[i];
    }
    CollisionOpResult res{GridFunction3(F.grid, std::move(out)),
                          gm * F.grid.cell_weight(), lm * F.grid.cell_weight()};
    return res;
}

CollisionOpResult apply_R_inelastic(const GridFunction3& f, const GridFunction3& F,
                                    const CollisionModel& model,
                                    const CollisionOpOptions& opts) {
    const ScalingTriple s = model.scaling();
    const double beta = model.inelastic_beta();
    const double eps = s.epsilon;
    const auto mom = moments_inelastic(beta);

    // The gas integral of the gain runs over the output grid itself so the
    // mass balance against the loss reduces to the same double sum.
    const UniformGrid3& wg = f.grid;
    const std::size_t nw = wg.size();
    const double hw3 = wg.cell_weight();
    const std::size_t nV = F.grid.size();
    const double hV3 = F.grid.cell_weight();

    const int chunks = 64;
    const std::size_t npairs = nV;
    std::vector<std::vector<double>> gain_part;
    const int nt = std::max(1, opts.threads);
    gain_part.assign(chunks, {});

    // loss and per-V contributions share |eps V - w| evaluations
    std::vector<double> lossV(nw, 0.0);

    parallel_for(chunks, opts.threads, [&](std::size_t c0, std::size_t c1) {
        std::vector<double> row(nw);
        for (std::size_t c = c0; c < c1; ++c) {
            std::vector<double> gacc(nw, 0.0);
            const std::size_t lo = npairs * c / chunks, hi = npairs * (c + 1) / chunks;
            for (std::size_t iV = lo; iV < hi; ++iV) {
                const double FV = F.values[iV] * hV3;
                if (FV == 0.0) continue;
                const Vec3 V = F.grid.node(iV);
                for (std::size_t iW = 0; iW < nw; ++iW) {
                    const double fWv = f.values[iW];
                    if (fWv == 0.0) continue;
                    const Vec3 W = wg.node(iW);
                    const double q = mom.q((V * eps - W).norm());
                    if (q <= 0.0) continue;
                    // kernel row over the output grid, renormalized to mass q
                    double rowmass = 0.0;
                    for (std::size_t iw = 0; iw < nw; ++iw) {
                        row[iw] = kernel_K_gp(wg.node(iw), V, W, s, beta);
                        rowmass += row[iw];
                    }
                    rowmass *= hw3;
                    if (rowmass <= 0.0) continue;
                    const double scale = FV * fWv * hw3 * q / rowmass;
                    for (std::size_t iw = 0; iw < nw; ++iw) gacc[iw] += scale * row[iw];
                }
            }
            gain_part[c] = std::move(gacc);
        }
    });

    parallel_for(nw, opts.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t iw = lo; iw < hi; ++iw) {
            const Vec3 w = wg.node(iw);
            double sum = 0.0;
            for (std::size_t iV = 0; iV < nV; ++iV) {
                if (F.values[iV] == 0.0) continue;
                sum += F.values[iV] * mom.q((F.grid.node(iV) * eps - w).norm());
            }
            lossV[iw] = sum * hV3;
        }
    });

    std::vector<double> out(nw, 0.0);
    double gm = 0.0, lm = 0.0;
    for (std::size_t iw = 0; iw < nw; ++iw) {
        double gain = 0.0;
        for (int c = 0; c < chunks; ++c)
            if (!gain_part[c].empty()) gain += gain_part[c][iw];
        const double loss = f.values[iw] * lossV[iw];
        out[iw] = gain - loss;
        gm += gain;
        lm += loss;
    }
    (void)nt;
    return {GridFunction3(wg, std::move(out)), gm * hw3, lm * hw3};
}

// Elastic models: one (v, w, omega) triple sum drives the scatter gains and
// the losses, with the omega rule aligned per pair to z = eps v - w so the
// |cos| kink of the kernel sits on the rule equator; the loss books the same
// omega sum of b, so gain and loss masses agree up to scatter clipping.
struct ElasticTriples {
    CollisionOpResult D;
    CollisionOpResult R;
};

void scatter_cic(const UniformGrid3& g, const Vec3& x, double amount,
                 std::vector<double>& acc) {
    const int n = g.n();
    const double h = g.h();
    double t[3];
    int i0[3];
    for (int a = 0; a < 3; ++a) {
        double sx = (x[a] + g.extent()) / h;
        double fl = std::floor(sx);
        i0[a] = static_cast<int>(fl);
        t[a] = sx - fl;
        if (i0[a] < -1 || i0[a] > n - 1) return;  // clipped
    }
    const double density = amount / g.cell_weight();
    for (int a = 0; a < 2; ++a) {
        int i = i0[0] + a;
        if (i < 0 || i >= n) continue;
        double wa = a ? t[0] : 1 - t[0];
        for (int b = 0; b < 2; ++b) {
            int j = i0[1] + b;
            if (j < 0 || j >= n) continue;
            double wb = b ? t[1] : 1 - t[1];
            for (int c = 0; c < 2; ++c) {
                int k = i0[2] + c;
                if (k < 0 || k >= n) continue;
                acc[g.index(i, j, k)] += density * wa * wb * (c ? t[2] : 1 - t[2]);
            }
        }
    }
}

struct PairFrame {
    Vec3 e1, e2, e3;
    explicit PairFrame(const Vec3& a) {
        e3 = a / a.norm();
        Vec3 t = std::abs(e3.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        e1 = e3.cross(t);
        e1 = e1 / e1.norm();
        e2 = e3.cross(e1);
    }
    Vec3 rotate(const Vec3& u) const { return e1 * u.x + e2 * u.y + e3 * u.z; }
};

ElasticTriples apply_elastic(const GridFunction3& F, const GridFunction3& f,
                             const CollisionModel& model, const CollisionOpOptions& opts) {
    const ScalingTriple s = model.scaling();
    const double eps = s.epsilon;
    if (eps <= 0.0) throw std::invalid_argument("apply_D/apply_R elastic: eps must be positive");
    const SphereRule omega_rule(opts.omega_polar, opts.omega_azimuth);
    const std::size_t nom = omega_rule.size();
    const std::size_t naz = static_cast<std::size_t>(opts.omega_azimuth);

    const std::size_t nv = F.grid.size(), nw = f.grid.size();
    const double wV = F.grid.cell_weight(), wW = f.grid.cell_weight();

    const int chunks = 64;
    std::vector<std::vector<double>> gainD_part(chunks), gainR_part(chunks),
        lossR_part(chunks);
    std::vector<double> lossD(nv, 0.0);

    parallel_for(chunks, opts.threads, [&](std::size_t c0, std::size_t c1) {
        for (std::size_t c = c0; c < c1; ++c) {
            std::vector<double> gD(nv, 0.0), gR(nw, 0.0), lR(nw, 0.0);
            const std::size_t lo = nv * c / chunks, hi = nv * (c + 1) / chunks;
            for (std::size_t iv = lo; iv < hi; ++iv) {
                const double Fv = F.values[iv];
                if (Fv == 0.0) continue;
                const Vec3 v = F.grid.node(iv);
                double lossD_acc = 0.0;
                for (std::size_t iw = 0; iw < nw; ++iw) {
                    const double fw = f.values[iw];
                    if (fw == 0.0) continue;
                    const Vec3 w = f.grid.node(iw);
                    const Vec3 z = v * eps - w;
                    if (z.norm2() == 0.0) continue;
                    const PairFrame frame(z);
                    const double pair_norm = Fv * fw * wV * wW;
                    double bint = 0.0;
                    // b depends on omega only through |cos(z, omega)|, constant
                    // along each azimuth ring of the aligned rule
                    for (std::size_t jp = 0; jp < nom; jp += naz) {
                        const double b = model.elastic_kernel(z, frame.rotate(omega_rule.nodes()[jp]));
                        if (b == 0.0) continue;
                        for (std::size_t jo = jp; jo < jp + naz; ++jo) {
                            const double wom = omega_rule.weights()[jo];
                            bint += wom * b;
                            const Vec3 om = frame.rotate(omega_rule.nodes()[jo]);
                            const double amount = pair_norm * wom * b;
                            auto [vpp, wpp] = elastic_post_velocities(v, w, om, s);
                            scatter_cic(F.grid, vpp, amount, gD);
                            scatter_cic(f.grid, wpp, amount, gR);
                        }
                    }
                    lossD_acc += fw * bint;
                    lR[iw] += fw * Fv * bint * wV;
                }
                lossD[iv] = Fv * lossD_acc * wW;
            }
            gainD_part[c] = std::move(gD);
            gainR_part[c] = std::move(gR);
            lossR_part[c] = std::move(lR);
        }
    });

    std::vector<double> outD(nv), outR(nw);
    double gmD = 0.0, lmD = 0.0, gmR = 0.0, lmR = 0.0;
    for (std::size_t i = 0; i < nv; ++i) {
        double g = 0.0;
        for (int c = 0; c < chunks; ++c)
            if (!gainD_part[c].empty()) g += gainD_part[c][i];
        outD[i] = g - lossD[i];
        gmD += g;
        lmD += lossD[i];
    }
    for (std::size_t i = 0; i < nw; ++i) {
        double g = 0.0, l = 0.0;
        for (int c = 0; c < chunks; ++c) {
            if (!gainR_part[c].empty()) g += gainR_part[c][i];
            if (!lossR_part[c].empty()) l += lossR_part[c][i];
        }
        outR[i] = g - l;
        gmR += g;
        lmR += l;
    }
    ElasticTriples out{{GridFunction3(F.grid, std::move(outD)), gmD * wV, lmD * wV},
                       {GridFunction3(f.grid, std::move(outR)), gmR * wW, lmR * wW}};
    return out;
}

void check_mass(const CollisionOpResult& r, double tol, const char* which) {
    if (r.mass_mismatch() > tol)
        throw std::runtime_error(std::string(which) +
                                 ": gain/loss mass mismatch exceeds tolerance, quadrature unresolved");
}

}  // namespace

CollisionOpResult apply_D(const GridFunction3& F, const GridFunction3& f,
                          const CollisionModel& model, const CollisionOpOptions& opts) {
    CollisionOpResult res = model.is_inelastic()
                                ? apply_D_inelastic(F, f, model, opts)
                                : apply_elastic(F, f, model, opts).D;
    check_mass(res, opts.mass_mismatch_tol, "apply_D");
    return res;
}

CollisionOpResult apply_R(const GridFunction3& f, const GridFunction3& F,
                          const CollisionModel& model, const CollisionOpOptions& opts) {
    CollisionOpResult res = model.is_inelastic()
                                ? apply_R_inelastic(f, F, model, opts)
                                : apply_elastic(F, f, model, opts).R;
    check_mass(res, opts.mass_mismatch_tol, "apply_R");
    return res;
}

}  // namespace aerokin
