#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "aerokin/gas_model.hpp"
#include "aerokin/rng.hpp"

using namespace aerokin;

TEST_CASE("Maxwellian at the origin and normalization") {
    CHECK(maxwellian({0, 0, 0}) == doctest::Approx(std::pow(2 * M_PI, -1.5)).epsilon(1e-15));
    VelocityQuadrature q(24);
    CHECK(std::abs(q.integrate([](const Vec3& w) { return maxwellian(w); }) - 1.0) <= 1e-10);
    CHECK(std::abs(q.integrate([](const Vec3& w) { return w.norm2() * maxwellian(w); }) - 3.0) <=
          1e-8);
}

TEST_CASE("tensor_A basics") {
    const Mat3 zero = tensor_A({0, 0, 0});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(zero(i, j) == 0.0);

    const Mat3 e1 = tensor_A({1, 0, 0});
    CHECK(e1(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(e1(1, 1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(e1(2, 2) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));

    // trace vanishes exactly, not approximately
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        const Vec3 w = rng.normal3() * 2.5;
        CHECK(tensor_A(w).trace() == 0.0);
    }
}

TEST_CASE("tensor_A rotation equivariance") {
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const Mat3 R = rng.rotation();
        const Vec3 w = rng.normal3();
        const Mat3 lhs = tensor_A(R.apply(w));
        const Mat3 rhs = conjugate(R, tensor_A(w));
        CHECK((lhs - rhs).frobenius_norm() <= 1e-12 * (1.0 + rhs.frobenius_norm()));
    }
}

TEST_CASE("A:A Gaussian moment equals 10") {
    VelocityQuadrature q(24);
    const double m = q.integrate([](const Vec3& w) {
        const Mat3 A = tensor_A(w);
        return A.ddot(A) * maxwellian(w);
    });
    CHECK(std::abs(m - 10.0) <= 1e-6);
}

TEST_CASE("a_tilde scales tensor_A and keeps parity-orthogonality") {
    GasModel m = GasModel::constant_alpha(2.0);
    const Mat3 At = m.a_tilde({1, 0, 0});
    CHECK(At(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(At(1, 1) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));

    VelocityQuadrature q(24);
    // int A~_ij M dw = 0 and int A~_ij w_k M dw = 0 by parity/tracelessness
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double m0 = q.integrate(
                [&](const Vec3& w) { return m.a_tilde(w)(i, j) * maxwellian(w); });
            CHECK(std::abs(m0) <= 1e-10);
            const double m1 = q.integrate(
                [&](const Vec3& w) { return m.a_tilde(w)(i, j) * w.x * maxwellian(w); });
            CHECK(std::abs(m1) <= 1e-10);
        }

    const double aa = q.integrate([&](const Vec3& w) {
        return m.a_tilde(w).ddot(tensor_A(w)) * maxwellian(w);
    });
    CHECK(std::abs(aa - 20.0) <= 2e-6);  // 10 alpha
}

TEST_CASE("viscosity equals alpha for constant alpha") {
    VelocityQuadrature q(24);
    CHECK(std::abs(viscosity(GasModel::constant_alpha(1.0), q) - 1.0) <= 1e-10);
    CHECK(std::abs(viscosity(GasModel::constant_alpha(0.37), q) - 0.37) <= 0.37 * 1e-10);
    // linearity in alpha
    const double nu1 = viscosity(GasModel::constant_alpha(0.8), q);
    const double nu2 = viscosity(GasModel::constant_alpha(1.6), q);
    CHECK(nu2 == doctest::Approx(2.0 * nu1).epsilon(1e-12));
}

TEST_CASE("tabulated alpha reproduces the constant case") {
    std::vector<double> r, v;
    for (int i = 0; i <= 32; ++i) {
        r.push_back(0.5 * i);
        v.push_back(1.0);
    }
    GasModel tab = GasModel::tabulated_alpha(r, v);
    VelocityQuadrature q(24);
    CHECK(std::abs(viscosity(tab, q) - 1.0) <= 1e-8);
    CHECK(tab.growth_bound_ok());
}

TEST_CASE("tabulated alpha interpolates monotonically and extrapolates flat") {
    GasModel tab = GasModel::tabulated_alpha({0.0, 1.0, 2.0, 3.0}, {1.0, 2.0, 2.5, 2.6});
    CHECK(tab.alpha(0.0) == doctest::Approx(1.0));
    CHECK(tab.alpha(1.0) == doctest::Approx(2.0));
    // monotone between the nodes
    double prev = tab.alpha(0.0);
    for (int i = 1; i <= 30; ++i) {
        const double a = tab.alpha(0.1 * i);
        CHECK(a >= prev - 1e-12);
        prev = a;
    }
    CHECK_FALSE(tab.extrapolated());
    CHECK(tab.alpha(5.0) == doctest::Approx(2.6));  // constant extension
    CHECK(tab.extrapolated());
}

TEST_CASE("invalid gas models are rejected") {
    CHECK_THROWS_AS(GasModel::constant_alpha(0.0), std::invalid_argument);
    CHECK_THROWS_AS(GasModel::constant_alpha(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(GasModel::tabulated_alpha({0.0, 1.0}, {1.0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(GasModel::tabulated_alpha({0.0, 1.0, 0.5}, {1.0, 1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GasModel::constant_alpha(1.0, 2.0), std::invalid_argument);  // gamma > 1
    CHECK_THROWS_AS(GasModel::constant_alpha(1.0, 0.5, 0.9), std::invalid_argument);  // c* <= 1
}
