// SPDX-License-Identifier: Apache-2.0
#ifndef WNF_BOUNDARIES_HPP
#define WNF_BOUNDARIES_HPP

#include "wnf/model.hpp"

namespace wnf {

/// Search parameters for a regime-boundary solve. The scan window defaults to
/// [1e-2, min(10 R_r, 0.95 c/df)]; the upper cap keeps the scan below the
/// multi-carrier ambiguity distance where the correlation folds back to 1.
struct BoundaryQuery {
    double theta_rad;
    double threshold;  // rho in (0, 1)
    double r_lo_m;
    double r_hi_m;
    int scan_points = 2048;

    void validate() const;
};

BoundaryQuery default_query(double rho, const ArrayConfig& array, const WidebandConfig& wb,
                            double theta_rad = kPi / 3.0);

/// Correlation between the wideband near-field response and its carrier-only
/// reference (closed Dirichlet-kernel form, Fresnel distances).
double corr_nbnf(double range_m, double theta_rad, const ArrayConfig& array,
                 const WidebandConfig& wb);

/// Same, with exact element distances instead of the Fresnel expansion.
double corr_nbnf_exact(double range_m, double theta_rad, const ArrayConfig& array,
                       const WidebandConfig& wb);

/// Correlation between the wideband near-field response and the wideband
/// planar reference; isolates curvature-induced decorrelation.
double corr_wbff(double range_m, double theta_rad, const ArrayConfig& array,
                 const WidebandConfig& wb);

/// Same, with exact element distances.
double corr_wbff_exact(double range_m, double theta_rad, const ArrayConfig& array,
                       const WidebandConfig& wb);

/// Largest r in the window with corr_nbnf >= rho, bisection-refined to 1e-4
/// relative; r_hi when the constraint holds everywhere. Throws when it holds
/// nowhere.
double r_nbnf_boundary(const BoundaryQuery& q, const ArrayConfig& array,
                       const WidebandConfig& wb);

/// Smallest r in the window from which corr_wbff >= rho holds at every larger
/// scanned r (envelope rule against the oscillation), refined to 1e-4.
double r_wbff_boundary(const BoundaryQuery& q, const ArrayConfig& array,
                       const WidebandConfig& wb);

struct WbffSufficientBounds {
    double r_dirichlet_m;  // M dk (1-a^2) (N' d)^2 / (4 pi)
    double r_fresnel_m;    // (1-a^2) D^2 / (4 lambda_c)
    double operative() const { return std::max(r_dirichlet_m, r_fresnel_m); }
};

WbffSufficientBounds sufficient_bounds_wbff(double theta_rad, const ArrayConfig& array,
                                            const WidebandConfig& wb);

}  // namespace wnf

#endif
