#ifndef AEROKIN_SCALING_HPP
#define AEROKIN_SCALING_HPP

#include <string>
#include <vector>

namespace aerokin {

/// Dimensional description of the mixture: box size, number densities,
/// thermal speeds, cross sections and the two mass parameters.
struct PhysicalSetup {
    double box_size = 0.0;            // L
    double n_particles_density = 0.0; // N_p, number / volume
    double n_gas_density = 0.0;       // N_g
    double thermal_speed_particles = 0.0;  // V_p
    double thermal_speed_gas = 0.0;        // V_g
    double cross_section_pp = 0.0;    // S_pp
    double cross_section_pg = 0.0;    // S_pg
    double cross_section_gg = 0.0;    // S_gg
    double mass_ratio = 0.0;          // eta = m_g / m_p
    double mass_fraction = 0.0;       // mu  = (m_g N_g) / (m_p N_p)

    /// Throws std::invalid_argument when a field is out of range or the
    /// closure eta/mu = N_p/N_g fails at 1e-12 relative.
    void validate() const;
};

/// The three small parameters of the scaled system.
struct ScalingTriple {
    double epsilon = 0.0;  // thermal speed ratio V_p / V_g
    double eta = 0.0;      // mass ratio
    double mu = 0.0;       // mass fraction

    /// Finite-n proxy for the limit regime: eta/eps^2 <= 1 and eps/mu^2 <= 1.
    bool theorem_admissible() const;
    void validate() const;  // 0 < eps, eta, mu <= 1
};

/// Output of the nondimensionalization: the triple plus the derived equation
/// coefficients and the diluteness number.
struct NondimResult {
    ScalingTriple scales;
    double coeff_drag = 0.0;        // 1/eta, in front of D(F, f)
    double coeff_friction = 0.0;    // 1/mu,  in front of R(f, F)
    double coeff_gas_collision = 0.0;  // mu/eps^2, in front of C(f)
    double diluteness = 0.0;        // N_p S_pp L
    bool diluteness_warning = false;   // N_p S_pp L >= 0.01
};

/// Checks the closures N_p S_pg L = eps/mu and N_g S_gg L = mu/eps at 1e-9
/// relative, then returns the scaling data.  Diluteness only warns, since the
/// particle-particle collision term is dropped formally.
NondimResult nondimensionalize(const PhysicalSetup& setup);

/// mu_n = 1/n, eps_n = n^-3, eta_n = n^-8 for n = 2..n_max.
std::vector<ScalingTriple> admissible_sequence(int n_max);

/// As above but over dyadic n = 2^1..2^j_max, so the ratio targets of the
/// friction-flux trend (n^-2 per step ~ 0.25) are realized.
std::vector<ScalingTriple> admissible_sequence_dyadic(int j_max);

}  // namespace aerokin

#endif
