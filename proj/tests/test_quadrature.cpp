#include <doctest.h>

#include <cmath>

#include "aerokin/gas_model.hpp"
#include "aerokin/quadrature.hpp"
#include "aerokin/rng.hpp"

using namespace aerokin;

TEST_CASE("Gauss-Legendre integrates polynomials and a Gaussian") {
    GaussLegendre gl(12, 0.0, 1.0);
    double s3 = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        s3 += gl.weights[i] * gl.nodes[i] * gl.nodes[i] * gl.nodes[i];
    CHECK(s3 == doctest::Approx(0.25).epsilon(1e-14));

    GaussLegendre g2(48, 0.0, 14.0);
    double gauss = 0.0;
    for (std::size_t i = 0; i < g2.nodes.size(); ++i)
        gauss += g2.weights[i] * std::exp(-0.5 * g2.nodes[i] * g2.nodes[i]);
    CHECK(gauss == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-14));
}

TEST_CASE("Gauss-Hermite physical rule hits Gaussian moments") {
    GaussHermite gh(24);
    double mass = 0.0, m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        const double x = gh.nodes[i], g = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
        mass += gh.weights[i] * g;
        m2 += gh.weights[i] * x * x * g;
        m4 += gh.weights[i] * x * x * x * x * g;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m4 == doctest::Approx(3.0).epsilon(1e-13));
    // node symmetry under x -> -x
    for (std::size_t i = 0; i < gh.nodes.size(); ++i)
        CHECK(gh.nodes[i] == doctest::Approx(-gh.nodes[gh.nodes.size() - 1 - i]).epsilon(1e-14));
}

TEST_CASE("velocity quadrature normalizes the Maxwellian") {
    VelocityQuadrature q(24);
    const double mass = q.integrate([](const Vec3& w) { return maxwellian(w); });
    CHECK(std::abs(mass - 1.0) <= 1e-10);
    const double m2 = q.integrate([](const Vec3& w) { return w.norm2() * maxwellian(w); });
    CHECK(std::abs(m2 - 3.0) <= 1e-8);
    // odd moments vanish by node symmetry
    const double modd = q.integrate([](const Vec3& w) { return w.x * w.norm2() * maxwellian(w); });
    CHECK(std::abs(modd) <= 1e-12);
}

TEST_CASE("radial sub-rule integrates half-line Gaussian moments of both parities") {
    VelocityQuadrature q(8);  // radial rule is independent of the tensor order
    // int_0^inf r^2 e^{-r^2/2} dr = sqrt(pi/2); weight absorbed in the rule
    const double m0 = q.integrate_radial([](double) { return 1.0; });
    CHECK(m0 == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-14));
    const double m1 = q.integrate_radial([](double r) { return r; });  // int r^3 e = 2
    CHECK(m1 == doctest::Approx(2.0).epsilon(1e-14));
    const double m3 = q.integrate_radial([](double r) { return r * r * r; });  // int r^5 e = 8
    CHECK(m3 == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("sphere rule: weights sum to 4 pi, nodes closed under negation") {
    SphereRule rule(8, 8);
    double total = 0.0;
    for (double w : rule.weights()) total += w;
    CHECK(total == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
    for (const Vec3& n : rule.nodes()) {
        CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-14));
        bool found = false;
        for (const Vec3& m : rule.nodes())
            if ((n + m).norm() < 1e-13) found = true;
        CHECK(found);
    }
    // second moment int n_i n_j dn = (4 pi / 3) delta_ij
    double zz = 0.0, xz = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
        zz += rule.weights()[j] * rule.nodes()[j].z * rule.nodes()[j].z;
        xz += rule.weights()[j] * rule.nodes()[j].x * rule.nodes()[j].z;
    }
    CHECK(zz == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-13));
    CHECK(std::abs(xz) <= 1e-14);
}

TEST_CASE("aligned sphere rule preserves weights and maps the pole") {
    SphereRule rule(6, 6);
    Rng rng(7);
    const Vec3 axis = rng.unit_vector();
    SphereRule acc = rule.aligned_to(axis);
    REQUIRE(acc.size() == rule.size());
    // polar cosines against the new axis match the original z-components
    for (std::size_t j = 0; j < rule.size(); ++j)
        CHECK(acc.nodes()[j].dot(axis) == doctest::Approx(rule.nodes()[j].z).epsilon(1e-12));
}

TEST_CASE("uniform grid indexing round-trips") {
    UniformGrid3 g(9, 4.5);
    CHECK(g.h() == doctest::Approx(9.0 / 8.0));
    const std::size_t id = g.index(2, 7, 4);
    const Vec3 v = g.node(id);
    CHECK(v.x == doctest::Approx(g.axis(2)));
    CHECK(v.y == doctest::Approx(g.axis(7)));
    CHECK(v.z == doctest::Approx(g.axis(4)));
}
