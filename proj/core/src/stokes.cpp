#include "aerokin/stokes.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>

namespace aerokin {

namespace {
inline int freq(int i, int n) { return i <= n / 2 ? i : i - n; }
}  // namespace

double FluidField::max_speed() const {
    double m = 0.0;
    for (std::size_t i = 0; i < ux.size(); ++i) {
        const double s2 = ux[i] * ux[i] + uy[i] * uy[i] + uz[i] * uz[i];
        m = std::max(m, s2);
    }
    return std::sqrt(m);
}

struct StokesSolver::Impl {
    int n;
    std::size_t rsize, csize;
    double* rbuf;
    fftw_complex* cbuf;
    fftw_plan fwd, bwd;

    explicit Impl(int n_) : n(n_) {
        rsize = static_cast<std::size_t>(n) * n * n;
        csize = static_cast<std::size_t>(n) * n * (n / 2 + 1);
        rbuf = fftw_alloc_real(rsize);
        cbuf = fftw_alloc_complex(csize);
        // x is the fastest index in our fields, so it is FFTW's last dimension
        fwd = fftw_plan_dft_r2c_3d(n, n, n, rbuf, cbuf, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_3d(n, n, n, cbuf, rbuf, FFTW_ESTIMATE);
        if (!fwd || !bwd) throw std::runtime_error("StokesSolver: FFTW plan creation failed");
    }
    ~Impl() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(rbuf);
        fftw_free(cbuf);
    }

    void forward(const std::vector<double>& in, std::vector<std::complex<double>>& out) const {
        std::memcpy(rbuf, in.data(), rsize * sizeof(double));
        fftw_execute(fwd);
        out.resize(csize);
        std::memcpy(out.data(), cbuf, csize * sizeof(fftw_complex));
        const double scale = 1.0 / static_cast<double>(rsize);
        for (auto& c : out) c *= scale;
    }

    void inverse(const std::vector<std::complex<double>>& in, std::vector<double>& out) const {
        std::memcpy(cbuf, in.data(), csize * sizeof(fftw_complex));
        fftw_execute(bwd);
        out.resize(rsize);
        std::memcpy(out.data(), rbuf, rsize * sizeof(double));
    }

    // Parseval norm^2 with the r2c half-spectrum double counting
    double spec_norm2(const std::vector<std::complex<double>>& a,
                      const std::vector<std::complex<double>>& b,
                      const std::vector<std::complex<double>>& c) const {
        double s = 0.0;
        const int nh = n / 2 + 1;
        for (int kz = 0; kz < n; ++kz)
            for (int ky = 0; ky < n; ++ky)
                for (int kx = 0; kx < nh; ++kx) {
                    const std::size_t id =
                        (static_cast<std::size_t>(kz) * n + ky) * nh + kx;
                    const double mult = (kx == 0 || (n % 2 == 0 && kx == n / 2)) ? 1.0 : 2.0;
                    s += mult * (std::norm(a[id]) + std::norm(b[id]) + std::norm(c[id]));
                }
        return s;
    }
};

StokesSolver::StokesSolver(int n) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("StokesSolver: grid size must be a power of two");
    impl_ = std::make_unique<Impl>(n);
}
StokesSolver::~StokesSolver() = default;

FluidField StokesSolver::solve(const MomentGrids& m, double nu, double kappa,
                               const FluidField& u_prev, const StokesOptions& opts) const {
    const int n = impl_->n;
    if (m.n != n) throw std::invalid_argument("StokesSolver: moment grid size mismatch");
    if (nu <= 0.0 || kappa <= 0.0)
        throw std::invalid_argument("StokesSolver: nu and kappa must be positive");
    const std::size_t rsize = impl_->rsize, csize = impl_->csize;
    const int nh = n / 2 + 1;

    FluidField out;
    out.n = n;
    out.nu = nu;
    out.kappa = kappa;

    double rho_bar = 0.0, jbar[3] = {0, 0, 0};
    for (std::size_t i = 0; i < rsize; ++i) {
        rho_bar += m.rho[i];
        jbar[0] += m.jx[i];
        jbar[1] += m.jy[i];
        jbar[2] += m.jz[i];
    }
    rho_bar /= rsize;
    for (double& v : jbar) v /= rsize;

    const bool empty = rho_bar <= 0.0;
    if (empty) {
        if (std::abs(jbar[0]) + std::abs(jbar[1]) + std::abs(jbar[2]) > 0.0)
            throw std::runtime_error("stokes_solve: zero mean density with nonzero mean force");
        out.ux.assign(rsize, 0.0);
        out.uy.assign(rsize, 0.0);
        out.uz.assign(rsize, 0.0);
        out.pressure.assign(rsize, 0.0);
        return out;
    }

    std::vector<std::complex<double>> jhat[3];
    impl_->forward(m.jx, jhat[0]);
    impl_->forward(m.jy, jhat[1]);
    impl_->forward(m.jz, jhat[2]);

    std::vector<double> u[3];
    if (u_prev.n == n && u_prev.ux.size() == rsize) {
        u[0] = u_prev.ux;
        u[1] = u_prev.uy;
        u[2] = u_prev.uz;
    } else {
        for (auto& c : u) c.assign(rsize, 0.0);
    }

    std::vector<double> g(rsize);
    std::vector<std::complex<double>> ghat[3], uhat[3], phat;
    const double two_pi = 2.0 * M_PI;
    const double force_scale = kappa * std::sqrt(impl_->spec_norm2(jhat[0], jhat[1], jhat[2]));

    double residual = 0.0;
    int it = 0;
    for (it = 1; it <= opts.max_iterations; ++it) {
        // lagged density-fluctuation term (rho - rho_bar) u, component-wise
        for (int c = 0; c < 3; ++c) {
            for (std::size_t i = 0; i < rsize; ++i) g[i] = (m.rho[i] - rho_bar) * u[c][i];
            impl_->forward(g, ghat[c]);
        }
        for (int c = 0; c < 3; ++c) uhat[c].assign(csize, {0.0, 0.0});
        phat.assign(csize, {0.0, 0.0});

        for (int kz = 0; kz < n; ++kz)
            for (int ky = 0; ky < n; ++ky)
                for (int kx = 0; kx < nh; ++kx) {
                    const std::size_t id =
                        (static_cast<std::size_t>(kz) * n + ky) * nh + kx;
                    const double fx = freq(kx, n), fy = freq(ky, n), fz = freq(kz, n);
                    const double k2 = fx * fx + fy * fy + fz * fz;
                    const std::complex<double> hx = kappa * (jhat[0][id] - ghat[0][id]);
                    const std::complex<double> hy = kappa * (jhat[1][id] - ghat[1][id]);
                    const std::complex<double> hz = kappa * (jhat[2][id] - ghat[2][id]);
                    if (k2 == 0.0) {
                        // mean mode: kappa rho_bar u_bar balances the mean force
                        uhat[0][id] = hx / (kappa * rho_bar);
                        uhat[1][id] = hy / (kappa * rho_bar);
                        uhat[2][id] = hz / (kappa * rho_bar);
                        continue;
                    }
                    const std::complex<double> kdoth = fx * hx + fy * hy + fz * hz;
                    const std::complex<double> px = hx - fx * kdoth / k2;
                    const std::complex<double> py = hy - fy * kdoth / k2;
                    const std::complex<double> pz = hz - fz * kdoth / k2;
                    const double denom = nu * two_pi * two_pi * k2 + kappa * rho_bar;
                    uhat[0][id] = px / denom;
                    uhat[1][id] = py / denom;
                    uhat[2][id] = pz / denom;
                    // pressure from the gradient part: grad p = k (k.h)/|k|^2
                    phat[id] = std::complex<double>(0, -1) * kdoth / (two_pi * k2);
                }

        // residual of the new iterate with the same lagged term
        double rnorm2 = 0.0;
        for (int kz = 0; kz < n; ++kz)
            for (int ky = 0; ky < n; ++ky)
                for (int kx = 0; kx < nh; ++kx) {
                    const std::size_t id =
                        (static_cast<std::size_t>(kz) * n + ky) * nh + kx;
                    const double fx = freq(kx, n), fy = freq(ky, n), fz = freq(kz, n);
                    const double k2 = fx * fx + fy * fy + fz * fz;
                    const double mult = (kx == 0 || (n % 2 == 0 && kx == n / 2)) ? 1.0 : 2.0;
                    // f = kappa (j - g - rho_bar u_new)
                    std::complex<double> f[3];
                    for (int c = 0; c < 3; ++c)
                        f[c] = kappa * (jhat[c][id] - ghat[c][id] - rho_bar * uhat[c][id]);
                    if (k2 == 0.0) {
                        for (int c = 0; c < 3; ++c) rnorm2 += mult * std::norm(f[c]);
                        continue;
                    }
                    const std::complex<double> kdotf = fx * f[0] + fy * f[1] + fz * f[2];
                    std::complex<double> r[3];
                    for (int c = 0; c < 3; ++c) {
                        const double fk = c == 0 ? fx : (c == 1 ? fy : fz);
                        r[c] = nu * two_pi * two_pi * k2 * uhat[c][id] -
                               (f[c] - fk * kdotf / k2);
                        rnorm2 += mult * std::norm(r[c]);
                    }
                }
        residual = force_scale > 0 ? std::sqrt(rnorm2) / force_scale : std::sqrt(rnorm2);

        for (int c = 0; c < 3; ++c) impl_->inverse(uhat[c], u[c]);
        if (residual <= opts.tolerance) break;
    }
    if (residual > opts.tolerance)
        throw std::runtime_error("stokes_solve: fixed point did not converge, last residual " +
                                 std::to_string(residual));

    out.ux = std::move(u[0]);
    out.uy = std::move(u[1]);
    out.uz = std::move(u[2]);
    impl_->inverse(phat, out.pressure);
    out.residual = residual;
    out.iterations = std::min(it, opts.max_iterations);
    return out;
}

double FluidField::spectral_divergence() const {
    if (n == 0 || ux.empty()) return 0.0;
    const std::size_t rsize = static_cast<std::size_t>(n) * n * n;
    const std::size_t csize = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    double* rbuf = fftw_alloc_real(rsize);
    fftw_complex* cbuf = fftw_alloc_complex(csize);
    fftw_plan fwd = fftw_plan_dft_r2c_3d(n, n, n, rbuf, cbuf, FFTW_ESTIMATE);
    std::vector<std::complex<double>> uhat[3];
    const std::vector<double>* comp[3] = {&ux, &uy, &uz};
    for (int c = 0; c < 3; ++c) {
        std::memcpy(rbuf, comp[c]->data(), rsize * sizeof(double));
        fftw_execute(fwd);
        uhat[c].assign(reinterpret_cast<std::complex<double>*>(cbuf),
                       reinterpret_cast<std::complex<double>*>(cbuf) + csize);
    }
    fftw_destroy_plan(fwd);
    fftw_free(rbuf);
    fftw_free(cbuf);

    const int nh = n / 2 + 1;
    double max_div = 0.0, max_u = 0.0;
    for (int kz = 0; kz < n; ++kz)
        for (int ky = 0; ky < n; ++ky)
            for (int kx = 0; kx < nh; ++kx) {
                const std::size_t id = (static_cast<std::size_t>(kz) * n + ky) * nh + kx;
                const double fx = freq(kx, n), fy = freq(ky, n), fz = freq(kz, n);
                const double dv =
                    std::abs(fx * uhat[0][id] + fy * uhat[1][id] + fz * uhat[2][id]);
                max_div = std::max(max_div, dv);
                const double uu = std::abs(uhat[0][id]) + std::abs(uhat[1][id]) +
                                  std::abs(uhat[2][id]);
                max_u = std::max(max_u, uu);
            }
    return max_u > 0 ? max_div / max_u : 0.0;
}

}  // namespace aerokin
