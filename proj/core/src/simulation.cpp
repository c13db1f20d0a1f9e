#include "aerokin/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "aerokin/parallel.hpp"
#include "aerokin/rng.hpp"

namespace aerokin {

void SimConfig::validate() const {
    if (grid < 2 || (grid & (grid - 1)) != 0)
        throw std::invalid_argument("sim: grid must be a power of two >= 2");
    if (dt <= 0.0) throw std::invalid_argument("sim: dt must be positive");
    if (t_end < 0.0) throw std::invalid_argument("sim: t_end must be nonnegative");
    if (kappa <= 0.0 || nu <= 0.0)
        throw std::invalid_argument("sim: kappa and nu must be positive");
    if (deposition_order != 1)
        throw std::invalid_argument("sim: only trilinear deposition (order 1) is implemented");
    if (fixed_point_tol <= 0.0) throw std::invalid_argument("sim: tolerance must be positive");
    if (output_every < 1) throw std::invalid_argument("sim: output_every must be >= 1");
    if (!components.empty()) {
        double total = 0.0;
        for (const auto& c : components) {
            if (c.fraction <= 0.0) throw std::invalid_argument("sim: component fraction <= 0");
            if (c.sigma_x < 0.0 || c.sigma_v < 0.0)
                throw std::invalid_argument("sim: negative component sigma");
            total += c.fraction;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw std::invalid_argument("sim: component fractions must sum to 1");
    }
}

ParticleEnsemble sample_initial_particles(const SimConfig& config) {
    config.validate();
    ParticleEnsemble p;
    p.reserve(config.particles);
    if (config.particles == 0) return p;
    Rng rng(config.seed);
    std::vector<GaussianComponent> comps = config.components;
    if (comps.empty()) comps.push_back({});
    const double w = config.total_weight / static_cast<double>(config.particles);

    std::size_t assigned = 0;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const GaussianComponent& c = comps[ci];
        std::size_t count = ci + 1 == comps.size()
                                ? config.particles - assigned
                                : static_cast<std::size_t>(c.fraction * config.particles);
        assigned += count;
        for (std::size_t i = 0; i < count; ++i) {
            const Vec3 pos = c.x0 + rng.normal3() * c.sigma_x;
            const Vec3 vel = c.v0 + rng.normal3() * c.sigma_v;
            p.push_back(pos, vel, w);
        }
    }
    return p;
}

Simulation::Simulation(const SimConfig& config)
    : Simulation(config, sample_initial_particles(config)) {}

Simulation::Simulation(const SimConfig& config, ParticleEnsemble ensemble)
    : config_(config), particles_(std::move(ensemble)), solver_(config.grid) {
    config_.validate();
    solve_fluid();
}

void Simulation::freeze_uniform_fluid(const Vec3& u0) {
    const std::size_t cells =
        static_cast<std::size_t>(config_.grid) * config_.grid * config_.grid;
    fluid_.n = config_.grid;
    fluid_.ux.assign(cells, u0.x);
    fluid_.uy.assign(cells, u0.y);
    fluid_.uz.assign(cells, u0.z);
    fluid_.pressure.assign(cells, 0.0);
    fluid_.nu = config_.nu;
    fluid_.kappa = config_.kappa;
    fluid_.residual = 0.0;
    fluid_.iterations = 0;
    frozen_ = true;
}

void Simulation::solve_fluid() {
    if (frozen_) return;
    const MomentGrids m =
        deposit_moments(particles_, config_.grid, config_.threads);
    StokesOptions o;
    o.tolerance = config_.fixed_point_tol;
    o.max_iterations = config_.fixed_point_max_iter;
    fluid_ = solver_.solve(m, config_.nu, config_.kappa, fluid_, o);
}

void Simulation::drift(double dt) {
    const std::size_t n = particles_.size();
    parallel_for(n, config_.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            particles_.x[i] = wrap01(particles_.x[i] + particles_.vx[i] * dt);
            particles_.y[i] = wrap01(particles_.y[i] + particles_.vy[i] * dt);
            particles_.z[i] = wrap01(particles_.z[i] + particles_.vz[i] * dt);
        }
    });
}

void Simulation::kick(double dt) {
    const double decay = std::exp(-config_.kappa * dt);
    const std::size_t n = particles_.size();
    parallel_for(n, config_.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Vec3 u = fluid_.velocity_at({particles_.x[i], particles_.y[i],
                                               particles_.z[i]});
            particles_.vx[i] = u.x + (particles_.vx[i] - u.x) * decay;
            particles_.vy[i] = u.y + (particles_.vy[i] - u.y) * decay;
            particles_.vz[i] = u.z + (particles_.vz[i] - u.z) * decay;
        }
    });
}

void Simulation::step() {
    drift(0.5 * config_.dt);
    solve_fluid();
    kick(config_.dt);
    drift(0.5 * config_.dt);
    time_ += config_.dt;
    ++step_;
}

DiagnosticsRow Simulation::diagnostics() const {
    DiagnosticsRow row;
    row.time = time_;
    row.step = step_;
    row.momentum = particles_.momentum();
    row.total_weight = particles_.total_weight();
    double ke = 0.0;
    for (std::size_t i = 0; i < particles_.size(); ++i) {
        const Vec3 u = fluid_.velocity_at({particles_.x[i], particles_.y[i], particles_.z[i]});
        const Vec3 dv{particles_.vx[i] - u.x, particles_.vy[i] - u.y, particles_.vz[i] - u.z};
        ke += particles_.weight[i] * dv.norm2();
    }
    row.relative_kinetic_energy = ke;
    row.max_u = fluid_.max_speed();
    row.stokes_residual = fluid_.residual;
    row.stokes_iterations = fluid_.iterations;
    return row;
}

void Simulation::run(const std::function<void(const DiagnosticsRow&)>& on_output) {
    on_output(diagnostics());
    const long n_steps = static_cast<long>(std::llround(config_.t_end / config_.dt));
    for (long s = 0; s < n_steps; ++s) {
        try {
            step();
        } catch (...) {
            on_output(diagnostics());  // dump the last valid state
            throw;
        }
        if ((s + 1) % config_.output_every == 0 || s + 1 == n_steps) on_output(diagnostics());
    }
}

}  // namespace aerokin
