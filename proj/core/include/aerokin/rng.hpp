#ifndef AEROKIN_RNG_HPP
#define AEROKIN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "aerokin/vec3.hpp"

namespace aerokin {

/// Seeded generator with explicitly coded distributions.
///
/// std::normal_distribution is implementation-defined, so reproducible output
/// uses mt19937_64 (fully specified) plus our own Box-Muller / rejection code.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // in [0, 1)
        return (gen_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec3 normal3() {
        double a = normal(), b = normal(), c = normal();
        return {a, b, c};
    }

    /// Uniform direction on the unit sphere.
    Vec3 unit_vector() {
        Vec3 v;
        double n2;
        do {
            v = normal3();
            n2 = v.norm2();
        } while (n2 < 1e-24);
        return v / std::sqrt(n2);
    }

    /// Random rotation matrix (QR-free: two unit vectors + Gram-Schmidt).
    Mat3 rotation() {
        Vec3 a = unit_vector();
        Vec3 t = unit_vector();
        Vec3 b = t - a * a.dot(t);
        while (b.norm2() < 1e-12) {
            t = unit_vector();
            b = t - a * a.dot(t);
        }
        b = b / b.norm();
        Vec3 c = a.cross(b);
        Mat3 R;
        for (int i = 0; i < 3; ++i) {
            R(i, 0) = a[i];
            R(i, 1) = b[i];
            R(i, 2) = c[i];
        }
        return R;
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace aerokin

#endif
