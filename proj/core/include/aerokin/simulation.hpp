#ifndef AEROKIN_SIMULATION_HPP
#define AEROKIN_SIMULATION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aerokin/particles.hpp"
#include "aerokin/stokes.hpp"

namespace aerokin {

/// One Gaussian blob of the initial phase-space mixture.
struct GaussianComponent {
    double fraction = 1.0;    // share of the particle count
    Vec3 x0{0.5, 0.5, 0.5};   // center in [0,1)^3
    double sigma_x = 0.1;
    Vec3 v0{0, 0, 0};
    double sigma_v = 0.0;
};

struct SimConfig {
    int grid = 16;            // N, power of two
    std::size_t particles = 100000;
    double dt = 0.01;
    double t_end = 1.0;
    double kappa = 1.0;
    double nu = 1.0;
    int deposition_order = 1;  // trilinear cloud-in-cell
    double fixed_point_tol = 1e-12;
    int fixed_point_max_iter = 200;
    int output_every = 1;      // steps between diagnostic rows
    std::uint64_t seed = 0;
    int threads = 1;
    double total_weight = 1.0;
    std::vector<GaussianComponent> components;

    void validate() const;
};

struct DiagnosticsRow {
    double time = 0.0;
    long step = 0;
    Vec3 momentum{0, 0, 0};
    double relative_kinetic_energy = 0.0;  // sum w_i |v_i - u(x_i)|^2
    double max_u = 0.0;
    double stokes_residual = 0.0;
    int stokes_iterations = 0;
    double total_weight = 0.0;
};

/// Weighted-particle transport for the dispersed phase with exact
/// exponential drag toward the quasi-static Stokes gas velocity.
///
/// One step is the Strang splitting: half drift, moment deposition, Stokes
/// solve, full exponential drag kick with u frozen at the particle position,
/// half drift.  Total particle weight is conserved exactly and positions
/// stay wrapped to [0, 1)^3.
class Simulation {
  public:
    explicit Simulation(const SimConfig& config);
    /// Takes an externally prepared ensemble (testing entry point).
    Simulation(const SimConfig& config, ParticleEnsemble ensemble);

    const ParticleEnsemble& particles() const { return particles_; }
    ParticleEnsemble& particles() { return particles_; }
    const FluidField& fluid() const { return fluid_; }
    double time() const { return time_; }
    long step_count() const { return step_; }

    /// Re-solves the Stokes problem from the current moments (also used to
    /// initialize the fluid before the first step).
    void solve_fluid();
    /// Disables the coupling: the gas is pinned to the uniform field u0 and
    /// step() stops re-solving.  Pure-drag dynamics are then the exact
    /// exponential map at any dt.
    void freeze_uniform_fluid(const Vec3& u0);
    void step();
    DiagnosticsRow diagnostics() const;

    /// Integrates to t_end, invoking on_output every output_every steps
    /// (including the initial state).  On a step failure the last valid
    /// diagnostics row is emitted before rethrowing.
    void run(const std::function<void(const DiagnosticsRow&)>& on_output);

  private:
    void drift(double dt);
    void kick(double dt);

    SimConfig config_;
    ParticleEnsemble particles_;
    StokesSolver solver_;
    FluidField fluid_;
    double time_ = 0.0;
    long step_ = 0;
    bool frozen_ = false;
};

/// Samples the configured Gaussian mixture (positions wrapped to the torus).
ParticleEnsemble sample_initial_particles(const SimConfig& config);

}  // namespace aerokin

#endif
