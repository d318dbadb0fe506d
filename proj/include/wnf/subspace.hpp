// SPDX-License-Identifier: Apache-2.0
#ifndef WNF_SUBSPACE_HPP
#define WNF_SUBSPACE_HPP

#include <string>
#include <vector>

#include "wnf/model.hpp"

namespace wnf {

struct CovarianceMatrix {
    CMat data;  // Hermitian n x n
    int snapshot_count;
};

/// Orthonormal split of a covariance eigenbasis at source count P. The noise
/// basis may be left empty when the subspace was produced from a thin SVD of
/// the snapshots; the projector is then the complement of the signal basis.
struct NoiseSubspace {
    CMat noise_basis;     // n x (n-P), possibly 0 x 0 for the complement form
    CMat signal_basis;    // n x P
    RVec eigenvalues;     // descending, length n when from a full eigensolve
};

struct SearchAxes {
    std::vector<double> theta_deg;
    std::vector<double> range_m;
};

/// Angles 60..120 deg step 0.1, ranges log-spaced n_range points over
/// [r_min, r_max].
SearchAxes default_axes(double r_min, double r_max, double theta_step_deg = 0.1,
                        int n_range = 64);

struct Spectrum {
    SearchAxes axes;
    RMat values;  // rows follow theta, columns follow range
};

/// Subcarrier-averaged spatial covariance R = (1/(MK)) sum_m Y_m Y_m^H.
CovarianceMatrix spatial_covariance_nb(const SnapshotMatrix& y, const ArrayConfig& array,
                                       const WidebandConfig& wb);

/// Full spatio-temporal covariance R = (1/K) Y Y^H. Refuses NM above the cap
/// (the full-scale config is not an eigensolve-sized problem).
CovarianceMatrix full_covariance_wb(const SnapshotMatrix& y, int nm_cap = 4096);

/// Hermitian eigensplit; noise basis spans the n-p smallest eigenpairs.
NoiseSubspace noise_subspace(const CovarianceMatrix& r, int p);

/// Signal basis from a thin SVD of the snapshots (top-p left singular
/// vectors); same subspace as noise_subspace(full_covariance_wb(y), p) at a
/// fraction of the cost. Noise basis left in complement form.
NoiseSubspace signal_subspace_from_snapshots(const SnapshotMatrix& y, int p);

/// Narrowband near-field MUSIC: scan vector is the exact-model steering
/// vector at the carrier frequency only.
Spectrum music_spectrum_nbnf(const NoiseSubspace& un, const SearchAxes& axes,
                             const ArrayConfig& array);

/// Wideband far-field MUSIC: scan vector is the planar-model multi-carrier
/// steering vector.
Spectrum music_spectrum_wbff(const NoiseSubspace& un, const SearchAxes& axes,
                             const ArrayConfig& array, const WidebandConfig& wb);

/// The p largest strict local maxima (8-neighborhood), descending by value;
/// filled from the largest remaining cells when fewer maxima exist.
EstimateSet find_peaks(const Spectrum& spec, int p);

/// CSV export: theta_deg,range_m,value_db in row-major axis order.
void write_spectrum_csv(const Spectrum& spec, const std::string& path,
                        const std::string& meta_comment);

}  // namespace wnf

#endif
