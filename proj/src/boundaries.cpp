// SPDX-License-Identifier: Apache-2.0
#include "wnf/boundaries.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wnf {
namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (int i = 0; i < n; ++i) out[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
    return out;
}

double bisect_crossing(double lo, double hi, double rho, bool want_ge_at_lo,
                       const std::function<double(double)>& fn) {
    // invariant: constraint holds at one end and fails at the other
    while ((hi - lo) / hi > 1e-4) {
        const double mid = std::sqrt(lo * hi);
        const bool ge = fn(mid) >= rho;
        if (ge == want_ge_at_lo)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

}  // namespace

void BoundaryQuery::validate() const {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("BoundaryQuery: threshold must lie in (0, 1)");
    if (!(r_lo_m > 0.0 && r_lo_m < r_hi_m))
        throw std::invalid_argument("BoundaryQuery: need 0 < r_lo < r_hi");
    if (scan_points < 64) throw std::invalid_argument("BoundaryQuery: scan_points must be >= 64");
}

BoundaryQuery default_query(double rho, const ArrayConfig& array, const WidebandConfig& wb,
                            double theta_rad) {
    BoundaryQuery q;
    q.theta_rad = theta_rad;
    q.threshold = rho;
    q.r_lo_m = 1e-2;
    const double ambiguity = kSpeedOfLight / wb.subcarrier_spacing_hz;
    q.r_hi_m = std::min(10.0 * array.rayleigh_distance_m(), 0.95 * ambiguity);
    q.scan_points = 2048;
    q.validate();
    return q;
}

double corr_nbnf(double range_m, double theta_rad, const ArrayConfig& array,
                 const WidebandConfig& wb) {
    const double alpha = std::cos(theta_rad);
    const double dk = wb.wavenumber_increment();
    const int m = wb.n_subcarriers;
    const int np = array.half_count();
    const double d = array.spacing_m;
    cplx acc(0.0, 0.0);
    for (int n = -np; n <= np; ++n) {
        const double psi = range_m - n * d * alpha +
                           n * n * d * d * (1.0 - alpha * alpha) / (2.0 * range_m);
        const double g = dk * psi;
        const double phase = (m - 1) * g / 2.0;
        acc += dirichlet(g, m) * cplx(std::cos(phase), std::sin(phase));
    }
    return clamp01(std::abs(acc) / (static_cast<double>(array.n_elements) * m));
}

double corr_nbnf_exact(double range_m, double theta_rad, const ArrayConfig& array,
                       const WidebandConfig& wb) {
    const double dk = wb.wavenumber_increment();
    const int m = wb.n_subcarriers;
    const Target probe(range_m, theta_rad, cplx(1.0, 0.0));
    cplx acc(0.0, 0.0);
    for (int n = 0; n < array.n_elements; ++n) {
        const double rn = exact_distance(probe, n, array);
        const double g = dk * rn;
        const double phase = (m - 1) * g / 2.0;
        acc += dirichlet(g, m) * cplx(std::cos(phase), std::sin(phase));
    }
    return clamp01(std::abs(acc) / (static_cast<double>(array.n_elements) * m));
}

double corr_wbff(double range_m, double theta_rad, const ArrayConfig& array,
                 const WidebandConfig& wb) {
    const double alpha = std::cos(theta_rad);
    const double dk = wb.wavenumber_increment();
    const double kc = array.carrier_wavenumber();
    const int m = wb.n_subcarriers;
    const int np = array.half_count();
    const double d = array.spacing_m;
    const double eta = (1.0 - alpha * alpha) / (2.0 * range_m);
    cplx acc(0.0, 0.0);
    for (int n = -np; n <= np; ++n) {
        const double chi2eta = (n * d) * (n * d) * eta;
        const double g = dk * chi2eta;
        const double phase = (m - 1) * g / 2.0 + kc * chi2eta;
        acc += dirichlet(g, m) * cplx(std::cos(phase), std::sin(phase));
    }
    return clamp01(std::abs(acc) / (static_cast<double>(array.n_elements) * m));
}

double corr_wbff_exact(double range_m, double theta_rad, const ArrayConfig& array,
                       const WidebandConfig& wb) {
    const double alpha = std::cos(theta_rad);
    const int m = wb.n_subcarriers;
    const Target probe(range_m, theta_rad, cplx(1.0, 0.0));
    cplx acc(0.0, 0.0);
    for (int n = 0; n < array.n_elements; ++n) {
        const double offset = exact_distance(probe, n, array) -
                              planar_distance(range_m, alpha, n, array);
        for (int sub = 0; sub < m; ++sub) {
            const double phase = wb.wavenumber(sub, array) * offset;
            acc += cplx(std::cos(phase), std::sin(phase));
        }
    }
    return clamp01(std::abs(acc) / (static_cast<double>(array.n_elements) * m));
}

double r_nbnf_boundary(const BoundaryQuery& q, const ArrayConfig& array,
                       const WidebandConfig& wb) {
    q.validate();
    const std::vector<double> grid = log_grid(q.r_lo_m, q.r_hi_m, q.scan_points);
    auto g1 = [&](double r) { return corr_nbnf(r, q.theta_rad, array, wb); };

    int last_ok = -1;
    for (int i = 0; i < q.scan_points; ++i)
        if (g1(grid[i]) >= q.threshold) last_ok = i;
    if (last_ok < 0)
        throw std::runtime_error("r_nbnf_boundary: constraint unsatisfiable on the window");
    if (last_ok == q.scan_points - 1) return q.r_hi_m;
    return bisect_crossing(grid[last_ok], grid[last_ok + 1], q.threshold, true, g1);
}

double r_wbff_boundary(const BoundaryQuery& q, const ArrayConfig& array,
                       const WidebandConfig& wb) {
    q.validate();
    const std::vector<double> grid = log_grid(q.r_lo_m, q.r_hi_m, q.scan_points);
    auto g2 = [&](double r) { return corr_wbff(r, q.theta_rad, array, wb); };

    // first index from which the constraint holds at every larger scan point
    int first_persistent = -1;
    bool hold = true;
    std::vector<char> ok(q.scan_points);
    for (int i = 0; i < q.scan_points; ++i) ok[i] = g2(grid[i]) >= q.threshold;
    for (int i = q.scan_points - 1; i >= 0; --i) {
        hold = hold && ok[i];
        if (hold) first_persistent = i;
    }
    if (first_persistent < 0)
        throw std::runtime_error("r_wbff_boundary: constraint unsatisfiable on the window");
    if (first_persistent == 0) return q.r_lo_m;
    if (ok[first_persistent - 1])  // oscillation dip beyond; the cell itself is the bracket
        return grid[first_persistent];
    return bisect_crossing(grid[first_persistent - 1], grid[first_persistent], q.threshold,
                           false, g2);
}

WbffSufficientBounds sufficient_bounds_wbff(double theta_rad, const ArrayConfig& array,
                                            const WidebandConfig& wb) {
    const double alpha = std::cos(theta_rad);
    const double one_ma2 = 1.0 - alpha * alpha;
    const double npd = array.half_count() * array.spacing_m;
    const double d_ap = array.aperture_m();
    WbffSufficientBounds b;
    b.r_dirichlet_m =
        wb.n_subcarriers * wb.wavenumber_increment() * one_ma2 * npd * npd / (4.0 * kPi);
    b.r_fresnel_m = one_ma2 * d_ap * d_ap / (4.0 * array.wavelength_m());
    return b;
}

}  // namespace wnf
