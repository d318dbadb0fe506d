// SPDX-License-Identifier: Apache-2.0
#include "wnf/model.hpp"

#include <cmath>
#include <optional>
#include <set>

namespace wnf {

WavefrontModel parse_wavefront_model(const std::string& tag) {
    if (tag == "exact") return WavefrontModel::exact;
    if (tag == "fresnel") return WavefrontModel::fresnel;
    if (tag == "planar") return WavefrontModel::planar;
    throw std::invalid_argument("unknown wavefront model tag: " + tag);
}

std::vector<int> element_offsets(const ArrayConfig& array) {
    std::vector<int> out(array.n_elements);
    const int np = array.half_count();
    for (int n = 0; n < array.n_elements; ++n) out[n] = n - np;
    return out;
}

double exact_distance(const Target& target, int n, const ArrayConfig& array) {
    if (n < 0 || n >= array.n_elements)
        throw std::out_of_range("exact_distance: element index out of range");
    const double dn = (n - array.half_count()) * array.spacing_m;
    const double r = target.range_m;
    return std::sqrt(r * r + dn * dn - 2.0 * r * dn * std::cos(target.theta_rad));
}

double fresnel_distance(double r0, double alpha, int n, const ArrayConfig& array) {
    if (r0 <= 0.0) throw std::invalid_argument("fresnel_distance: r0 must be positive");
    if (n < 0 || n >= array.n_elements)
        throw std::out_of_range("fresnel_distance: element index out of range");
    const double dn = (n - array.half_count()) * array.spacing_m;
    return r0 - dn * alpha + dn * dn * (1.0 - alpha * alpha) / (2.0 * r0);
}

double planar_distance(double r, double alpha, int n, const ArrayConfig& array) {
    const double dn = (n - array.half_count()) * array.spacing_m;
    return r - dn * alpha;
}

SteeringVector steering_vector(double range_m, double theta_rad, const ArrayConfig& array,
                               const WidebandConfig& wb, WavefrontModel model, bool normalize) {
    if (range_m <= 0.0) throw std::invalid_argument("steering_vector: range must be positive");
    const int n_el = array.n_elements;
    const int n_sub = wb.n_subcarriers;
    const double alpha = std::cos(theta_rad);

    std::vector<double> rho(n_el);
    const Target probe(range_m, theta_rad, cplx(1.0, 0.0));
    for (int n = 0; n < n_el; ++n) {
        switch (model) {
            case WavefrontModel::exact: rho[n] = exact_distance(probe, n, array); break;
            case WavefrontModel::fresnel: rho[n] = fresnel_distance(range_m, alpha, n, array); break;
            case WavefrontModel::planar: rho[n] = planar_distance(range_m, alpha, n, array); break;
        }
    }

    SteeringVector sv;
    sv.model = model;
    sv.normalized = normalize;
    sv.entries.resize(static_cast<Eigen::Index>(n_el) * n_sub);
    const double scale = normalize ? 1.0 / std::sqrt(static_cast<double>(n_el) * n_sub) : 1.0;
    for (int m = 0; m < n_sub; ++m) {
        const double km = wb.wavenumber(m, array);
        for (int n = 0; n < n_el; ++n) {
            const double phase = -km * rho[n];
            sv.entries[static_cast<Eigen::Index>(m) * n_el + n] =
                scale * cplx(std::cos(phase), std::sin(phase));
        }
    }
    return sv;
}

double rayleigh_distance(const ArrayConfig& array) { return array.rayleigh_distance_m(); }

namespace {

SnapshotMatrix synthesize_core(const std::vector<Target>& targets, const ArrayConfig& array,
                               const WidebandConfig& wb, std::uint64_t seed,
                               std::optional<double> snr_db, double sigma2) {
    if (targets.empty()) throw std::invalid_argument("synthesize_snapshots: empty target list");
    if (static_cast<int>(targets.size()) >= array.n_elements)
        throw std::invalid_argument("synthesize_snapshots: need |targets| < N");
    std::set<std::pair<double, double>> positions;
    for (const auto& t : targets) positions.insert({t.range_m, t.theta_rad});
    if (positions.size() != targets.size())
        throw std::invalid_argument("synthesize_snapshots: target positions must be pairwise distinct");

    const int k_sym = wb.n_symbols;
    const Eigen::Index nm = static_cast<Eigen::Index>(array.n_elements) * wb.n_subcarriers;
    const int p_count = static_cast<int>(targets.size());

    Rng rng(seed);
    SnapshotMatrix out;
    out.pilot_symbols.resize(p_count, k_sym);
    for (int k = 0; k < k_sym; ++k)
        for (int p = 0; p < p_count; ++p) out.pilot_symbols(p, k) = rng.unit_phase();

    out.data = CMat::Zero(nm, k_sym);
    for (int p = 0; p < p_count; ++p) {
        const SteeringVector a =
            steering_vector(targets[p].range_m, targets[p].theta_rad, array, wb,
                            WavefrontModel::exact, /*normalize=*/false);
        out.data.noalias() +=
            (targets[p].gain * a.entries) * out.pilot_symbols.row(p);
    }

    if (snr_db) {
        const double mean_power = out.data.squaredNorm() / static_cast<double>(nm * k_sym);
        sigma2 = mean_power / std::pow(10.0, *snr_db / 10.0);
    }
    out.noise_variance = sigma2;
    if (sigma2 > 0.0) {
        for (Eigen::Index k = 0; k < out.data.cols(); ++k)
            for (Eigen::Index i = 0; i < out.data.rows(); ++i)
                out.data(i, k) += rng.complex_normal(sigma2);
    }
    return out;
}

}  // namespace

SnapshotMatrix synthesize_snapshots(const std::vector<Target>& targets, const ArrayConfig& array,
                                    const WidebandConfig& wb, double snr_db, std::uint64_t seed) {
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("synthesize_snapshots: snr_db must be finite");
    return synthesize_core(targets, array, wb, seed, snr_db, 0.0);
}

SnapshotMatrix synthesize_snapshots_sigma(const std::vector<Target>& targets,
                                          const ArrayConfig& array, const WidebandConfig& wb,
                                          double noise_variance, std::uint64_t seed) {
    if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance))
        throw std::invalid_argument("synthesize_snapshots_sigma: noise variance must be finite and >= 0");
    return synthesize_core(targets, array, wb, seed, std::nullopt, noise_variance);
}

double mean_signal_power(const std::vector<Target>& targets, const ArrayConfig& array,
                         const WidebandConfig& wb) {
    const SnapshotMatrix clean = synthesize_core(targets, array, wb, /*seed=*/0, std::nullopt, 0.0);
    return clean.data.squaredNorm() / static_cast<double>(clean.data.size());
}

}  // namespace wnf
