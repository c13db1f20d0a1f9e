#ifndef AEROKIN_PARTICLES_HPP
#define AEROKIN_PARTICLES_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aerokin/vec3.hpp"

namespace aerokin {

/// Weighted particles on the unit torus [0,1)^3.
struct ParticleEnsemble {
    std::vector<double> x, y, z;     // positions, wrapped to [0,1)
    std::vector<double> vx, vy, vz;  // velocities
    std::vector<double> weight;      // positive number-density contributions

    std::size_t size() const { return x.size(); }
    double total_weight() const;
    Vec3 momentum() const;  // sum w_i v_i

    void reserve(std::size_t n);
    void push_back(const Vec3& pos, const Vec3& vel, double w);
};

/// Periodic wrap to [0, 1).
inline double wrap01(double s) {
    s -= std::floor(s);
    return s < 1.0 ? s : 0.0;  // guard s = 1.0 from rounding
}

/// Number-density and momentum-density grids from cloud-in-cell deposition.
/// Cell values are densities: sums over the grid times the cell volume
/// reproduce sum w_i and sum w_i v_i up to rounding.
struct MomentGrids {
    int n = 0;
    std::vector<double> rho;      // n^3, x-fastest
    std::vector<double> jx, jy, jz;
};

/// Deposits with a fixed chunk decomposition independent of the thread count,
/// merging chunk buffers in chunk order, so results are bit-identical for any
/// `threads`.
MomentGrids deposit_moments(const ParticleEnsemble& particles, int n, int threads = 1,
                            int chunks = 64);

/// Trilinear periodic interpolation of a node-valued field at x in [0,1)^3.
Vec3 interpolate_velocity(int n, const std::vector<double>& ux, const std::vector<double>& uy,
                          const std::vector<double>& uz, const Vec3& pos);

}  // namespace aerokin

#endif
