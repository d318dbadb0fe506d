// SPDX-License-Identifier: Apache-2.0
#ifndef WNF_COMMON_HPP
#define WNF_COMMON_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <Eigen/Dense>

namespace wnf {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

/// Deterministic random stream. Wraps the standard-specified mt19937_64 and
/// hand-rolls the variate transforms so that a given seed produces the same
/// sequence on every platform (the std distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (consumes two uniforms per pair).
    double standard_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(), u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * kPi * u2);
    }

    /// Circular complex Gaussian with E|z|^2 = variance.
    cplx complex_normal(double variance) {
        const double s = std::sqrt(variance / 2.0);
        const double re = s * standard_normal();
        const double im = s * standard_normal();
        return {re, im};
    }

    /// Unit-modulus symbol with uniformly random phase.
    cplx unit_phase() {
        const double phi = 2.0 * kPi * uniform01();
        return {std::cos(phi), std::sin(phi)};
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Stream seed for trial `t` of a run seeded with `seed`. XOR derivation keeps
/// earlier trials stable when the trial count grows.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t) { return seed ^ t; }

inline double clamp01(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

/// Dirichlet kernel D_M(gamma) = sin(M*gamma/2) / sin(gamma/2) with the
/// removable singularities evaluated by limit.
inline double dirichlet(double gamma, int m) {
    const double den = std::sin(gamma / 2.0);
    if (std::abs(den) < 1e-12) {
        // near gamma = 2*pi*p the ratio tends to M * cos(M g/2) / cos(g/2)
        return static_cast<double>(m) * std::cos(m * gamma / 2.0) / std::cos(gamma / 2.0);
    }
    return std::sin(m * gamma / 2.0) / den;
}

/// |D_M(gamma)| / M in [0, 1]; 1 at every removable singularity.
inline double dirichlet_normalized(double gamma, int m) {
    const double den = std::sin(gamma / 2.0);
    if (std::abs(den) < 1e-12) return 1.0;
    return clamp01(std::abs(std::sin(m * gamma / 2.0) / (m * den)));
}

}  // namespace wnf

#endif
