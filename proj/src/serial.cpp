// SPDX-License-Identifier: Apache-2.0
#include "wnf/serial.hpp"

#include <cmath>

namespace wnf::serial {

CMat build_dictionary_matrix(const PolarGrid& grid, const ArrayConfig& array,
                             const WidebandConfig& wb) {
    const int n_el = array.n_elements;
    const int n_sub = wb.n_subcarriers;
    const int np = (n_el - 1) / 2;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_el) * n_sub);
    CMat out(static_cast<Eigen::Index>(n_el) * n_sub,
             static_cast<Eigen::Index>(grid.atoms.size()));
    for (std::size_t q = 0; q < grid.atoms.size(); ++q) {
        const double r = grid.atoms[q].range_m;
        const double alpha = grid.atoms[q].alpha;
        for (int m = 0; m < n_sub; ++m) {
            const double km =
                2.0 * kPi * (array.carrier_freq_hz + m * wb.subcarrier_spacing_hz) / kSpeedOfLight;
            for (int n = 0; n < n_el; ++n) {
                const double dn = (n - np) * array.spacing_m;
                const double rn = std::sqrt(r * r + dn * dn - 2.0 * r * dn * alpha);
                out(static_cast<Eigen::Index>(m) * n_el + n, static_cast<Eigen::Index>(q)) =
                    scale * std::polar(1.0, -km * rn);
            }
        }
    }
    return out;
}

std::vector<double> somp_scores(const CMat& dict, const CMat& residual) {
    std::vector<double> scores(static_cast<std::size_t>(dict.cols()), 0.0);
    for (Eigen::Index q = 0; q < dict.cols(); ++q) {
        for (Eigen::Index k = 0; k < residual.cols(); ++k) {
            cplx acc(0.0, 0.0);
            for (Eigen::Index i = 0; i < dict.rows(); ++i)
                acc += std::conj(dict(i, q)) * residual(i, k);
            scores[static_cast<std::size_t>(q)] += std::abs(acc);
        }
    }
    return scores;
}

RMat music_spectrum_values(const NoiseSubspace& un, const SearchAxes& axes,
                           const ArrayConfig& array, const WidebandConfig& wb, bool planar) {
    RMat out(static_cast<Eigen::Index>(axes.theta_deg.size()),
             static_cast<Eigen::Index>(axes.range_m.size()));
    const WidebandConfig scan_wb = planar ? wb : WidebandConfig{1, 1.0, 1};
    for (std::size_t ti = 0; ti < axes.theta_deg.size(); ++ti) {
        for (std::size_t ri = 0; ri < axes.range_m.size(); ++ri) {
            const SteeringVector a =
                steering_vector(axes.range_m[ri], axes.theta_deg[ti] * kPi / 180.0, array, scan_wb,
                                planar ? WavefrontModel::planar : WavefrontModel::exact, true);
            double denom;
            if (un.noise_basis.size() > 0) {
                denom = (un.noise_basis.adjoint() * a.entries).squaredNorm();
            } else {
                denom = a.entries.squaredNorm() -
                        (un.signal_basis.adjoint() * a.entries).squaredNorm();
            }
            out(static_cast<Eigen::Index>(ti), static_cast<Eigen::Index>(ri)) =
                1.0 / std::max(1e-12, denom);
        }
    }
    return out;
}

}  // namespace wnf::serial
