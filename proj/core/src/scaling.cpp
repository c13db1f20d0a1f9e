#include "aerokin/scaling.hpp"

#include <cmath>
#include <stdexcept>

namespace aerokin {

namespace {
void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}
double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}
}  // namespace

void PhysicalSetup::validate() const {
    require(box_size > 0, "box_size must be positive");
    require(n_particles_density > 0, "n_particles_density must be positive");
    require(n_gas_density > 0, "n_gas_density must be positive");
    require(thermal_speed_particles > 0, "thermal_speed_particles must be positive");
    require(thermal_speed_gas > 0, "thermal_speed_gas must be positive");
    require(cross_section_pp > 0, "cross_section_pp must be positive");
    require(cross_section_pg > 0, "cross_section_pg must be positive");
    require(cross_section_gg > 0, "cross_section_gg must be positive");
    require(mass_ratio > 0 && mass_ratio <= 1, "mass_ratio must lie in (0, 1]");
    require(mass_fraction > 0, "mass_fraction must be positive");
    double eps = thermal_speed_particles / thermal_speed_gas;
    require(eps > 0 && eps <= 1, "thermal speed ratio V_p/V_g must lie in (0, 1]");
    // eta/mu = N_p/N_g ties the mass parameters to the densities
    require(rel_diff(mass_ratio / mass_fraction, n_particles_density / n_gas_density) <= 1e-12,
            "eta/mu must equal N_p/N_g (relative tolerance 1e-12)");
}

bool ScalingTriple::theorem_admissible() const {
    return eta / (epsilon * epsilon) <= 1.0 && epsilon / (mu * mu) <= 1.0;
}

void ScalingTriple::validate() const {
    require(epsilon > 0 && epsilon <= 1, "epsilon must lie in (0, 1]");
    require(eta > 0 && eta <= 1, "eta must lie in (0, 1]");
    require(mu > 0 && mu <= 1, "mu must lie in (0, 1]");
}

NondimResult nondimensionalize(const PhysicalSetup& setup) {
    setup.validate();
    NondimResult out;
    out.scales.epsilon = setup.thermal_speed_particles / setup.thermal_speed_gas;
    out.scales.eta = setup.mass_ratio;
    out.scales.mu = setup.mass_fraction;
    out.scales.validate();

    const double eps = out.scales.epsilon, mu = out.scales.mu;
    const double np_spg_l = setup.n_particles_density * setup.cross_section_pg * setup.box_size;
    const double ng_sgg_l = setup.n_gas_density * setup.cross_section_gg * setup.box_size;
    if (rel_diff(np_spg_l, eps / mu) > 1e-9)
        throw std::invalid_argument("closure N_p S_pg L = eps/mu violated beyond 1e-9 relative");
    if (rel_diff(ng_sgg_l, mu / eps) > 1e-9)
        throw std::invalid_argument("closure N_g S_gg L = mu/eps violated beyond 1e-9 relative");

    out.coeff_drag = 1.0 / out.scales.eta;
    out.coeff_friction = 1.0 / mu;
    out.coeff_gas_collision = mu / (eps * eps);
    out.diluteness = setup.n_particles_density * setup.cross_section_pp * setup.box_size;
    out.diluteness_warning = out.diluteness >= 0.01;
    return out;
}

std::vector<ScalingTriple> admissible_sequence(int n_max) {
    if (n_max < 2) throw std::invalid_argument("admissible_sequence: n_max must be >= 2");
    std::vector<ScalingTriple> seq;
    seq.reserve(n_max - 1);
    for (int n = 2; n <= n_max; ++n) {
        double dn = static_cast<double>(n);
        seq.push_back({std::pow(dn, -3.0), std::pow(dn, -8.0), 1.0 / dn});
    }
    return seq;
}

std::vector<ScalingTriple> admissible_sequence_dyadic(int j_max) {
    if (j_max < 1) throw std::invalid_argument("admissible_sequence_dyadic: j_max must be >= 1");
    std::vector<ScalingTriple> seq;
    seq.reserve(j_max);
    for (int j = 1; j <= j_max; ++j) {
        double dn = std::ldexp(1.0, j);  // 2^j
        seq.push_back({std::pow(dn, -3.0), std::pow(dn, -8.0), 1.0 / dn});
    }
    return seq;
}

}  // namespace aerokin
