// SPDX-License-Identifier: Apache-2.0
#include "wnf/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wnf/csv.hpp"

namespace wnf {
namespace {

constexpr double kSpectrumFloor = 1e-12;

/// 1 / max(eps, a^H (I - Us Us^H) a) for a unit-norm scan vector; identical
/// to the noise-projector form because the eigenbasis is complete.
double pseudo_spectrum_value(const NoiseSubspace& sub, const CVec& scan) {
    double denom;
    if (sub.noise_basis.size() > 0 && sub.signal_basis.size() == 0) {
        const CVec proj = sub.noise_basis.adjoint() * scan;
        denom = proj.squaredNorm();
    } else {
        const CVec proj = sub.signal_basis.adjoint() * scan;
        denom = scan.squaredNorm() - proj.squaredNorm();
    }
    return 1.0 / std::max(kSpectrumFloor, denom);
}

}  // namespace

SearchAxes default_axes(double r_min, double r_max, double theta_step_deg, int n_range) {
    SearchAxes axes;
    for (double t = 60.0; t <= 120.0 + 1e-9; t += theta_step_deg) axes.theta_deg.push_back(t);
    const double lr0 = std::log(r_min), lr1 = std::log(r_max);
    for (int i = 0; i < n_range; ++i)
        axes.range_m.push_back(std::exp(lr0 + (lr1 - lr0) * i / (n_range - 1)));
    return axes;
}

CovarianceMatrix spatial_covariance_nb(const SnapshotMatrix& y, const ArrayConfig& array,
                                       const WidebandConfig& wb) {
    const Eigen::Index n = array.n_elements;
    const Eigen::Index m = wb.n_subcarriers;
    if (y.data.rows() != n * m)
        throw std::invalid_argument("spatial_covariance_nb: row count is not N*M");
    const Eigen::Index k = y.data.cols();
    CMat r = CMat::Zero(n, n);
    for (Eigen::Index sub = 0; sub < m; ++sub) {
        const auto block = y.data.middleRows(sub * n, n);
        r.noalias() += block * block.adjoint();
    }
    r /= static_cast<double>(m * k);
    r = (r + r.adjoint().eval()) / 2.0;  // exact Hermitian symmetry
    return {std::move(r), static_cast<int>(k)};
}

CovarianceMatrix full_covariance_wb(const SnapshotMatrix& y, int nm_cap) {
    if (y.data.rows() > nm_cap)
        throw std::length_error("full_covariance_wb: NM = " + std::to_string(y.data.rows()) +
                                " exceeds the cap " + std::to_string(nm_cap) +
                                "; use a desk-scale configuration");
    const Eigen::Index k = y.data.cols();
    CMat r = (y.data * y.data.adjoint()) / static_cast<double>(k);
    r = (r + r.adjoint().eval()) / 2.0;
    return {std::move(r), static_cast<int>(k)};
}

NoiseSubspace noise_subspace(const CovarianceMatrix& r, int p) {
    const Eigen::Index n = r.data.rows();
    if (p < 1 || p >= n) throw std::invalid_argument("noise_subspace: need 1 <= p < n");
    Eigen::SelfAdjointEigenSolver<CMat> eig(r.data);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("noise_subspace: eigendecomposition failed");
    // SelfAdjointEigenSolver sorts ascending; flip to descending.
    NoiseSubspace out;
    out.eigenvalues.resize(n);
    CMat vecs(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues[i] = eig.eigenvalues()[n - 1 - i];
        vecs.col(i) = eig.eigenvectors().col(n - 1 - i);
    }
    out.signal_basis = vecs.leftCols(p);
    out.noise_basis = vecs.rightCols(n - p);
    return out;
}

NoiseSubspace signal_subspace_from_snapshots(const SnapshotMatrix& y, int p) {
    const Eigen::Index n = y.data.rows();
    const Eigen::Index k = y.data.cols();
    if (p < 1 || p >= std::min(n, k))
        throw std::invalid_argument("signal_subspace_from_snapshots: need 1 <= p < min(NM, K)");
    Eigen::BDCSVD<CMat> svd(y.data, Eigen::ComputeThinU);
    NoiseSubspace out;
    out.signal_basis = svd.matrixU().leftCols(p);
    out.eigenvalues.resize(p);
    for (int i = 0; i < p; ++i) {
        const double s = svd.singularValues()[i];
        out.eigenvalues[i] = s * s / static_cast<double>(k);
    }
    return out;
}

Spectrum music_spectrum_nbnf(const NoiseSubspace& un, const SearchAxes& axes,
                             const ArrayConfig& array) {
    const Eigen::Index n = un.signal_basis.size() > 0 ? un.signal_basis.rows()
                                                      : un.noise_basis.rows();
    if (n != array.n_elements)
        throw std::invalid_argument("music_spectrum_nbnf: subspace dimension is not N");
    WidebandConfig single{1, 1.0, 1};  // carrier-only scan vector
    Spectrum spec;
    spec.axes = axes;
    spec.values.resize(static_cast<Eigen::Index>(axes.theta_deg.size()),
                       static_cast<Eigen::Index>(axes.range_m.size()));
    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(axes.theta_deg.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ti = 0; ti < rows; ++ti) {
        for (std::size_t ri = 0; ri < axes.range_m.size(); ++ri) {
            const SteeringVector a =
                steering_vector(axes.range_m[ri], axes.theta_deg[ti] * kPi / 180.0, array, single,
                                WavefrontModel::exact, /*normalize=*/true);
            spec.values(ti, static_cast<Eigen::Index>(ri)) = pseudo_spectrum_value(un, a.entries);
        }
    }
    return spec;
}

Spectrum music_spectrum_wbff(const NoiseSubspace& un, const SearchAxes& axes,
                             const ArrayConfig& array, const WidebandConfig& wb) {
    const Eigen::Index n = un.signal_basis.size() > 0 ? un.signal_basis.rows()
                                                      : un.noise_basis.rows();
    const Eigen::Index n_el = array.n_elements;
    const Eigen::Index n_sub = wb.n_subcarriers;
    if (n != n_el * n_sub)
        throw std::invalid_argument("music_spectrum_wbff: subspace dimension is not N*M");
    Spectrum spec;
    spec.axes = axes;
    spec.values.resize(static_cast<Eigen::Index>(axes.theta_deg.size()),
                       static_cast<Eigen::Index>(axes.range_m.size()));
    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(axes.theta_deg.size());

    if (un.signal_basis.size() > 0) {
        // The planar atom factors as e^{-j k_m r} * e^{+j k_m dn alpha}, so the
        // signal-basis projection splits into a per-(angle, subcarrier) array
        // response followed by a length-M range sum per cell.
        const Eigen::Index p = un.signal_basis.cols();
        const double scale = 1.0 / std::sqrt(static_cast<double>(n_el) * n_sub);
        std::vector<double> km(n_sub);
        for (Eigen::Index m = 0; m < n_sub; ++m) km[m] = wb.wavenumber(static_cast<int>(m), array);
        const int np = array.half_count();
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t ti = 0; ti < rows; ++ti) {
            const double alpha = std::cos(axes.theta_deg[ti] * kPi / 180.0);
            CMat w(n_sub, p);  // W(m, q) = sum_n conj(U[mN+n, q]) e^{j k_m dn alpha}
            CVec phases(n_el);
            for (Eigen::Index m = 0; m < n_sub; ++m) {
                for (Eigen::Index nn = 0; nn < n_el; ++nn) {
                    const double dn = (static_cast<int>(nn) - np) * array.spacing_m;
                    phases[nn] = std::polar(1.0, km[m] * dn * alpha);
                }
                w.row(m) = (un.signal_basis.middleRows(m * n_el, n_el).adjoint() * phases)
                               .transpose();
            }
            for (std::size_t ri = 0; ri < axes.range_m.size(); ++ri) {
                const double r = axes.range_m[ri];
                double captured = 0.0;
                CVec range_phase(n_sub);
                for (Eigen::Index m = 0; m < n_sub; ++m)
                    range_phase[m] = std::polar(scale, -km[m] * r);
                for (Eigen::Index q = 0; q < p; ++q)
                    captured += std::norm(w.col(q).cwiseProduct(range_phase).sum());
                spec.values(ti, static_cast<Eigen::Index>(ri)) =
                    1.0 / std::max(kSpectrumFloor, 1.0 - captured);
            }
        }
        return spec;
    }

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ti = 0; ti < rows; ++ti) {
        for (std::size_t ri = 0; ri < axes.range_m.size(); ++ri) {
            const SteeringVector a =
                steering_vector(axes.range_m[ri], axes.theta_deg[ti] * kPi / 180.0, array, wb,
                                WavefrontModel::planar, /*normalize=*/true);
            spec.values(ti, static_cast<Eigen::Index>(ri)) = pseudo_spectrum_value(un, a.entries);
        }
    }
    return spec;
}

EstimateSet find_peaks(const Spectrum& spec, int p) {
    if (p < 1) throw std::invalid_argument("find_peaks: need p >= 1");
    const Eigen::Index nt = spec.values.rows();
    const Eigen::Index nr = spec.values.cols();
    if (nt == 0 || nr == 0) throw std::invalid_argument("find_peaks: empty spectrum");

    struct Cell {
        double value;
        Eigen::Index ti, ri;
    };
    std::vector<Cell> maxima, others;
    for (Eigen::Index ti = 0; ti < nt; ++ti) {
        for (Eigen::Index ri = 0; ri < nr; ++ri) {
            const double v = spec.values(ti, ri);
            bool is_max = true;
            for (int dt = -1; dt <= 1 && is_max; ++dt) {
                for (int dr = -1; dr <= 1; ++dr) {
                    if (dt == 0 && dr == 0) continue;
                    const Eigen::Index t2 = ti + dt, r2 = ri + dr;
                    if (t2 < 0 || t2 >= nt || r2 < 0 || r2 >= nr) continue;
                    if (spec.values(t2, r2) >= v) {
                        is_max = false;
                        break;
                    }
                }
            }
            (is_max ? maxima : others).push_back({v, ti, ri});
        }
    }
    auto by_value = [nr](const Cell& a, const Cell& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.ti * nr + a.ri < b.ti * nr + b.ri;  // ties: lowest linear index
    };
    std::sort(maxima.begin(), maxima.end(), by_value);
    std::sort(others.begin(), others.end(), by_value);

    EstimateSet out;
    for (const auto& c : maxima) {
        if (static_cast<int>(out.estimates.size()) >= p) break;
        out.estimates.push_back({spec.axes.range_m[c.ri], spec.axes.theta_deg[c.ti] * kPi / 180.0});
    }
    for (const auto& c : others) {
        if (static_cast<int>(out.estimates.size()) >= p) break;
        out.estimates.push_back({spec.axes.range_m[c.ri], spec.axes.theta_deg[c.ti] * kPi / 180.0});
    }
    return out;
}

void write_spectrum_csv(const Spectrum& spec, const std::string& path,
                        const std::string& meta_comment) {
    CsvWriter csv(path, meta_comment);
    csv.header({"theta_deg", "range_m", "value_db"});
    for (std::size_t ti = 0; ti < spec.axes.theta_deg.size(); ++ti) {
        for (std::size_t ri = 0; ri < spec.axes.range_m.size(); ++ri) {
            csv.field(spec.axes.theta_deg[ti]);
            csv.field(spec.axes.range_m[ri]);
            csv.field(10.0 * std::log10(spec.values(static_cast<Eigen::Index>(ti),
                                                    static_cast<Eigen::Index>(ri))));
            csv.end_row();
        }
    }
}

}  // namespace wnf
