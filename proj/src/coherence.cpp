// SPDX-License-Identifier: Apache-2.0
#include "wnf/coherence.hpp"

#include <cmath>
#include <stdexcept>

namespace wnf {
namespace {

// Maclaurin series; accurate to ~1e-12 for zeta <= 2.4 (alternating terms
// stay small enough that cancellation does not bite yet).
FresnelPair fresnel_series(double z) {
    const double h = kPi / 2.0 * z * z;  // pi z^2 / 2
    double u = 0.0, v = 0.0;
    // U: sum (-1)^n h^{2n} z / ((2n)! (4n+1)), V: sum (-1)^n h^{2n+1} z / ((2n+1)! (4n+3))
    double term_u = z;        // n = 0 factor before the 1/(4n+1) weight
    double term_v = z * h;    // n = 0 for V
    for (int n = 0; n < 40; ++n) {
        u += term_u / (4 * n + 1);
        v += term_v / (4 * n + 3);
        term_u *= -h * h / ((2 * n + 1) * (2 * n + 2));
        term_v *= -h * h / ((2 * n + 2) * (2 * n + 3));
        if (std::abs(term_u) < 1e-17 && std::abs(term_v) < 1e-17) break;
    }
    return {u, v};
}

// Auxiliary-function asymptotics, U = 1/2 + f sin(w) - g cos(w),
// V = 1/2 - f cos(w) - g sin(w) with w = pi z^2 / 2. Truncated adaptively;
// error below 1e-9 for z >= 4.5.
FresnelPair fresnel_asymptotic(double z) {
    const double pz2 = kPi * z * z;
    double f = 0.0, g = 0.0;
    double num = 1.0;  // (4m-1)!! with (-1)!! = 1
    double den = 1.0;  // (pi z^2)^{2m}
    double prev = 1e300;
    for (int m = 0; m < 24; ++m) {
        const double tf = num / den;
        if (std::abs(tf) > prev) break;  // divergent tail reached
        prev = std::abs(tf);
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        f += sign * tf;
        g += sign * tf * (4 * m + 1) / pz2;
        num *= (4 * m + 1) * (4 * m + 3);
        den *= pz2 * pz2;
        if (tf < 1e-17) break;
    }
    const double pref = 1.0 / (kPi * z);
    f *= pref;
    g *= pref;
    const double w = kPi / 2.0 * z * z;
    const double sw = std::sin(w), cw = std::cos(w);
    return {0.5 + f * sw - g * cw, 0.5 - f * cw - g * sw};
}

double simpson(double (*fn)(double), double a, double b, int n) {
    double s = fn(a) + fn(b);
    const double h = (b - a) / n;
    for (int i = 1; i < n; ++i) s += fn(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double cos_half_pi_sq(double t) { return std::cos(kPi / 2.0 * t * t); }
double sin_half_pi_sq(double t) { return std::sin(kPi / 2.0 * t * t); }

double adaptive_simpson(double (*fn)(double), double a, double b, double tol) {
    int n = 32;
    double prev = simpson(fn, a, b, n);
    for (int it = 0; it < 16; ++it) {
        n *= 2;
        const double cur = simpson(fn, a, b, n);
        if (std::abs(cur - prev) < tol) return cur;
        prev = cur;
    }
    return prev;
}

constexpr double kSeriesEdge = 2.4;
constexpr double kAsympEdge = 4.5;

}  // namespace

FresnelPair fresnel_integrals(double zeta) {
    if (zeta < 0.0) {
        const FresnelPair p = fresnel_integrals(-zeta);
        return {-p.u, -p.v};
    }
    if (zeta <= kSeriesEdge) return fresnel_series(zeta);
    if (zeta >= kAsympEdge) return fresnel_asymptotic(zeta);
    // Bridge region: series anchor plus a short smooth quadrature.
    const FresnelPair base = fresnel_series(kSeriesEdge);
    const double du = adaptive_simpson(cos_half_pi_sq, kSeriesEdge, zeta, 1e-11);
    const double dv = adaptive_simpson(sin_half_pi_sq, kSeriesEdge, zeta, 1e-11);
    return {base.u + du, base.v + dv};
}

double mutual_coherence(const SteeringVector& a, const SteeringVector& b) {
    if (!a.normalized || !b.normalized)
        throw std::invalid_argument("mutual_coherence: vectors must be normalized");
    if (a.entries.size() != b.entries.size())
        throw std::invalid_argument("mutual_coherence: length mismatch");
    return clamp01(std::abs(a.entries.dot(b.entries)));
}

double s_freq(double delta_r, const WidebandConfig& wb) {
    const double gamma = wb.wavenumber_increment() * delta_r;
    return dirichlet_normalized(gamma, wb.n_subcarriers);
}

double s_space_linear(double delta_alpha, int n_elements) {
    return dirichlet_normalized(kPi * delta_alpha, n_elements);
}

double curvature_coherence_zeta(double zeta, int n_elements) {
    if (zeta <= 0.0) return 1.0;
    const int np = (n_elements - 1) / 2;
    const FresnelPair p = fresnel_integrals(zeta);
    const double mag = 2.0 * np / (n_elements * zeta) * std::sqrt(p.u * p.u + p.v * p.v);
    return clamp01(mag);
}

double curvature_coherence(double x, int n_elements) {
    if (x == 0.0) return 1.0;
    const int np = (n_elements - 1) / 2;
    const double zeta = np * std::sqrt(2.0 * std::abs(x));
    return curvature_coherence_zeta(zeta, n_elements);
}

double curvature_coherence_sum(double x, int n_elements) {
    const int np = (n_elements - 1) / 2;
    cplx acc(0.0, 0.0);
    for (int n = -np; n <= np; ++n) {
        const double phase = kPi * static_cast<double>(n) * n * x;
        acc += cplx(std::cos(phase), std::sin(phase));
    }
    return clamp01(std::abs(acc) / n_elements);
}

double solve_zeta(double delta, int n_elements, double zeta_max) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("solve_zeta: delta must lie in (0, 1)");
    const int scan_points = 20000;
    double lo = 0.0;
    double hi = -1.0;
    double prev_z = 0.0;
    double prev_v = curvature_coherence_zeta(0.0, n_elements);
    for (int i = 1; i <= scan_points; ++i) {
        const double z = zeta_max * i / scan_points;
        const double v = curvature_coherence_zeta(z, n_elements);
        if (prev_v >= delta && v < delta) {
            lo = prev_z;
            hi = z;
            break;
        }
        prev_z = z;
        prev_v = v;
    }
    if (hi < 0.0) throw std::runtime_error("solve_zeta: no crossing found on [0, zeta_max]");
    while (hi - lo > 1e-4) {
        const double mid = (lo + hi) / 2.0;
        if (curvature_coherence_zeta(mid, n_elements) >= delta)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2.0;
}

}  // namespace wnf
