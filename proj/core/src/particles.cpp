#include "aerokin/particles.hpp"

#include <cmath>
#include <stdexcept>

#include "aerokin/parallel.hpp"

namespace aerokin {

double ParticleEnsemble::total_weight() const {
    double s = 0.0;
    for (double w : weight) s += w;
    return s;
}

Vec3 ParticleEnsemble::momentum() const {
    Vec3 p{0, 0, 0};
    for (std::size_t i = 0; i < size(); ++i)
        p += Vec3{vx[i], vy[i], vz[i]} * weight[i];
    return p;
}

void ParticleEnsemble::reserve(std::size_t n) {
    x.reserve(n);
    y.reserve(n);
    z.reserve(n);
    vx.reserve(n);
    vy.reserve(n);
    vz.reserve(n);
    weight.reserve(n);
}

void ParticleEnsemble::push_back(const Vec3& pos, const Vec3& vel, double w) {
    if (w <= 0.0) throw std::invalid_argument("particle weight must be positive");
    x.push_back(wrap01(pos.x));
    y.push_back(wrap01(pos.y));
    z.push_back(wrap01(pos.z));
    vx.push_back(vel.x);
    vy.push_back(vel.y);
    vz.push_back(vel.z);
    weight.push_back(w);
}

MomentGrids deposit_moments(const ParticleEnsemble& p, int n, int threads, int chunks) {
    if (n < 2) throw std::invalid_argument("deposit_moments: grid too small");
    const std::size_t cells = static_cast<std::size_t>(n) * n * n;
    const std::size_t np = p.size();
    const int nc = static_cast<int>(std::min<std::size_t>(chunks, np > 0 ? np : 1));

    std::vector<std::vector<double>> part(nc);
    parallel_for(nc, threads, [&](std::size_t c0, std::size_t c1) {
        for (std::size_t c = c0; c < c1; ++c) {
            std::vector<double> buf(4 * cells, 0.0);
            const std::size_t lo = np * c / nc, hi = np * (c + 1) / nc;
            for (std::size_t i = lo; i < hi; ++i) {
                const double sx = p.x[i] * n, sy = p.y[i] * n, sz = p.z[i] * n;
                const int ix = static_cast<int>(sx), iy = static_cast<int>(sy),
                          iz = static_cast<int>(sz);
                const double tx = sx - ix, ty = sy - iy, tz = sz - iz;
                const double w = p.weight[i];
                for (int a = 0; a < 2; ++a) {
                    const int ia = (ix + a) % n;
                    const double wa = a ? tx : 1.0 - tx;
                    for (int b = 0; b < 2; ++b) {
                        const int jb = (iy + b) % n;
                        const double wb = b ? ty : 1.0 - ty;
                        for (int cc = 0; cc < 2; ++cc) {
                            const int kc = (iz + cc) % n;
                            const double frac = wa * wb * (cc ? tz : 1.0 - tz) * w;
                            const std::size_t id =
                                static_cast<std::size_t>(ia) +
                                static_cast<std::size_t>(n) * (jb + static_cast<std::size_t>(n) * kc);
                            buf[4 * id + 0] += frac;
                            buf[4 * id + 1] += frac * p.vx[i];
                            buf[4 * id + 2] += frac * p.vy[i];
                            buf[4 * id + 3] += frac * p.vz[i];
                        }
                    }
                }
            }
            part[c] = std::move(buf);
        }
    });

    MomentGrids out;
    out.n = n;
    out.rho.assign(cells, 0.0);
    out.jx.assign(cells, 0.0);
    out.jy.assign(cells, 0.0);
    out.jz.assign(cells, 0.0);
    const double inv_cell = static_cast<double>(cells);  // 1 / h^3 on the unit torus
    for (int c = 0; c < nc; ++c) {
        const std::vector<double>& buf = part[c];
        if (buf.empty()) continue;
        for (std::size_t id = 0; id < cells; ++id) {
            out.rho[id] += buf[4 * id + 0];
            out.jx[id] += buf[4 * id + 1];
            out.jy[id] += buf[4 * id + 2];
            out.jz[id] += buf[4 * id + 3];
        }
    }
    for (std::size_t id = 0; id < cells; ++id) {
        out.rho[id] *= inv_cell;
        out.jx[id] *= inv_cell;
        out.jy[id] *= inv_cell;
        out.jz[id] *= inv_cell;
    }
    return out;
}

Vec3 interpolate_velocity(int n, const std::vector<double>& ux, const std::vector<double>& uy,
                          const std::vector<double>& uz, const Vec3& pos) {
    const double sx = wrap01(pos.x) * n, sy = wrap01(pos.y) * n, sz = wrap01(pos.z) * n;
    const int ix = static_cast<int>(sx), iy = static_cast<int>(sy), iz = static_cast<int>(sz);
    const double tx = sx - ix, ty = sy - iy, tz = sz - iz;
    Vec3 out{0, 0, 0};
    for (int a = 0; a < 2; ++a) {
        const int ia = (ix + a) % n;
        const double wa = a ? tx : 1.0 - tx;
        for (int b = 0; b < 2; ++b) {
            const int jb = (iy + b) % n;
            const double wb = b ? ty : 1.0 - ty;
            for (int c = 0; c < 2; ++c) {
                const int kc = (iz + c) % n;
                const double w = wa * wb * (c ? tz : 1.0 - tz);
                const std::size_t id = static_cast<std::size_t>(ia) +
                                       static_cast<std::size_t>(n) *
                                           (jb + static_cast<std::size_t>(n) * kc);
                out.x += w * ux[id];
                out.y += w * uy[id];
                out.z += w * uz[id];
            }
        }
    }
    return out;
}

}  // namespace aerokin
