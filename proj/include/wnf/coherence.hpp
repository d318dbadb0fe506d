// SPDX-License-Identifier: Apache-2.0
#ifndef WNF_COHERENCE_HPP
#define WNF_COHERENCE_HPP

#include "wnf/model.hpp"

namespace wnf {

/// Pair of Fresnel integrals U(z) = int_0^z cos(pi k^2/2) dk and
/// V(z) = int_0^z sin(pi k^2/2) dk.
struct FresnelPair {
    double u;
    double v;
};

/// |a^H b| for two unit-norm steering vectors, clamped to [0, 1].
double mutual_coherence(const SteeringVector& a, const SteeringVector& b);

/// Frequency-domain correlation (1/M) |sin(M dk dr/2) / sin(dk dr/2)|.
/// Removable singularities evaluate to 1; zero at dr = p c/B for integer p
/// that is not a multiple of M.
double s_freq(double delta_r, const WidebandConfig& wb);

/// Linear array factor (1/N) |sin(N pi da/2) / sin(pi da/2)| under
/// half-wavelength spacing.
double s_space_linear(double delta_alpha, int n_elements);

/// Absolute error <= 1e-8 on zeta >= 0 (odd symmetry used for zeta < 0).
FresnelPair fresnel_integrals(double zeta);

/// Quadratic-phase aperture coherence |F(x)| of Eq-25 form:
/// (2 / (N sqrt(2|x|))) sqrt(U^2 + V^2) at zeta = N' sqrt(2|x|); 1 at x = 0.
double curvature_coherence(double x, int n_elements);

/// |F| evaluated directly on the zeta axis (zeta = N' sqrt(2|x|)).
double curvature_coherence_zeta(double zeta, int n_elements);

/// Discrete quadratic-phase sum (1/N) |sum_{n'} exp(j pi n'^2 x)|; the
/// integral-free route the Fresnel form approximates.
double curvature_coherence_sum(double x, int n_elements);

/// First zeta where |F(zeta)| falls to `delta`, refined by bisection to 1e-4.
/// The curve oscillates; this returns the first downward crossing, which is
/// the convention behind the reference zeta values (see decisions ledger).
double solve_zeta(double delta, int n_elements, double zeta_max = 200.0);

}  // namespace wnf

#endif
