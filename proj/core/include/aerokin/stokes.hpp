#ifndef AEROKIN_STOKES_HPP
#define AEROKIN_STOKES_HPP

#include <memory>
#include <vector>

#include "aerokin/particles.hpp"
#include "aerokin/vec3.hpp"

namespace aerokin {

/// Divergence-free gas velocity on an N^3 collocation grid with the pressure
/// diagnostic recovered from the gradient part of the force.
struct FluidField {
    int n = 0;
    std::vector<double> ux, uy, uz;  // node values, x-fastest
    std::vector<double> pressure;
    double nu = 0.0;
    double kappa = 0.0;
    double residual = 0.0;           // relative Stokes residual of the last solve
    int iterations = 0;

    Vec3 velocity_at(const Vec3& pos) const {
        return interpolate_velocity(n, ux, uy, uz, pos);
    }
    double max_speed() const;
    /// max_k |k.u(k)| / max_k |u(k)| over the spectrum (0 when u = 0).
    double spectral_divergence() const;
};

struct StokesOptions {
    double tolerance = 1e-12;   // relative residual target
    int max_iterations = 200;
};

/// Spectral solver for -nu Lap u + grad p = kappa (j - rho u), div u = 0 on
/// the unit torus.  The Brinkman term is split as kappa rho_bar u (implicit)
/// plus kappa (rho - rho_bar) u (lagged in a fixed-point iteration).
///
/// Plans are created with FFTW_ESTIMATE so repeated runs produce identical
/// transforms.
class StokesSolver {
  public:
    explicit StokesSolver(int n);
    ~StokesSolver();
    StokesSolver(const StokesSolver&) = delete;
    StokesSolver& operator=(const StokesSolver&) = delete;

    /// Solves with initial iterate u_prev (pass empty field to start from 0).
    /// Throws on non-convergence or when the mean force cannot be balanced
    /// (mean density zero with nonzero mean force).
    FluidField solve(const MomentGrids& moments, double nu, double kappa,
                     const FluidField& u_prev, const StokesOptions& opts = {}) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace aerokin

#endif
