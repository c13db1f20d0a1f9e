#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "aerokin/scaling.hpp"

using namespace aerokin;

namespace {
PhysicalSetup consistent_setup(double eps, double eta, double mu) {
    // build densities/cross-sections realizing both closures exactly
    PhysicalSetup s;
    s.box_size = 1.0;
    s.thermal_speed_gas = 100.0;
    s.thermal_speed_particles = eps * s.thermal_speed_gas;
    s.mass_ratio = eta;
    s.mass_fraction = mu;
    s.n_gas_density = 1e6;
    s.n_particles_density = s.n_gas_density * eta / mu;
    s.cross_section_pg = (eps / mu) / (s.n_particles_density * s.box_size);
    s.cross_section_gg = (mu / eps) / (s.n_gas_density * s.box_size);
    s.cross_section_pp = 1e-9 / (s.n_particles_density * s.box_size);
    return s;
}
}  // namespace

TEST_CASE("nondimensionalize reproduces the scaled-system coefficients") {
    const auto s = consistent_setup(0.1, 1e-4, 1e-2);
    const NondimResult r = nondimensionalize(s);
    CHECK(r.scales.epsilon == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(r.scales.eta == doctest::Approx(1e-4).epsilon(1e-14));
    CHECK(r.scales.mu == doctest::Approx(1e-2).epsilon(1e-14));
    CHECK(r.coeff_drag == doctest::Approx(1e4).epsilon(1e-12));
    CHECK(r.coeff_friction == doctest::Approx(1e2).epsilon(1e-12));
    CHECK(r.coeff_gas_collision == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(r.diluteness_warning);
}

TEST_CASE("mass parameters must match the density ratio") {
    auto s = consistent_setup(0.1, 1e-4, 1e-2);
    s.n_particles_density *= 1.0001;  // breaks eta/mu = N_p/N_g
    CHECK_THROWS_AS(nondimensionalize(s), std::invalid_argument);
}

TEST_CASE("closure checks accept the documented collision-rate regime") {
    // N_p S_pg L = eps/mu = 10 and N_g S_gg L = mu/eps = 0.1
    const auto s = consistent_setup(0.1, 1e-4, 1e-2);
    const double np_spg_l = s.n_particles_density * s.cross_section_pg * s.box_size;
    const double ng_sgg_l = s.n_gas_density * s.cross_section_gg * s.box_size;
    CHECK(np_spg_l == doctest::Approx(10.0));
    CHECK(ng_sgg_l == doctest::Approx(0.1));
    CHECK_NOTHROW(nondimensionalize(s));

    auto bad = s;
    bad.cross_section_pg *= 1.001;  // violates N_p S_pg L = eps/mu
    CHECK_THROWS_AS(nondimensionalize(bad), std::invalid_argument);
}

TEST_CASE("diluteness warns without failing") {
    auto s = consistent_setup(0.1, 1e-4, 1e-2);
    s.cross_section_pp = 0.02 / (s.n_particles_density * s.box_size);
    const NondimResult r = nondimensionalize(s);
    CHECK(r.diluteness_warning);
    CHECK(r.diluteness == doctest::Approx(0.02));
}

TEST_CASE("nondimensionalize is invariant under the length rescaling") {
    auto s = consistent_setup(0.37, 2e-4, 3e-2);
    const NondimResult a = nondimensionalize(s);
    const double scale = 7.3;
    s.box_size *= scale;
    s.cross_section_pg /= scale;
    s.cross_section_gg /= scale;
    s.cross_section_pp /= scale;
    const NondimResult b = nondimensionalize(s);
    CHECK(a.scales.epsilon == b.scales.epsilon);
    CHECK(a.scales.eta == b.scales.eta);
    CHECK(a.scales.mu == b.scales.mu);
}

TEST_CASE("admissible sequence realizes the limit constraints") {
    const auto seq = admissible_sequence(8);
    REQUIRE(seq.size() == 7);
    CHECK(seq[0].epsilon == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(seq[0].eta == doctest::Approx(1.0 / 256.0).epsilon(1e-15));
    CHECK(seq[0].mu == doctest::Approx(0.5).epsilon(1e-15));
    double prev_r1 = 2.0, prev_r2 = 2.0;
    for (const auto& t : seq) {
        CHECK(t.theorem_admissible());
        const double r1 = t.eta / (t.epsilon * t.epsilon);   // n^-2
        const double r2 = t.epsilon / (t.mu * t.mu);         // n^-1
        CHECK(r1 < prev_r1);
        CHECK(r2 < prev_r2);
        CHECK(t.eta < t.epsilon * t.epsilon);
        CHECK(t.epsilon < t.mu * t.mu);
        prev_r1 = r1;
        prev_r2 = r2;
    }
    CHECK_THROWS_AS(admissible_sequence(1), std::invalid_argument);
}

TEST_CASE("dyadic sequence matches the same power laws") {
    const auto seq = admissible_sequence_dyadic(4);
    REQUIRE(seq.size() == 4);
    for (int j = 0; j < 4; ++j) {
        const double n = std::ldexp(1.0, j + 1);
        CHECK(seq[j].mu == doctest::Approx(1.0 / n).epsilon(1e-15));
        CHECK(seq[j].epsilon == doctest::Approx(std::pow(n, -3.0)).epsilon(1e-15));
        CHECK(seq[j].eta == doctest::Approx(std::pow(n, -8.0)).epsilon(1e-15));
        CHECK(seq[j].theorem_admissible());
    }
}
