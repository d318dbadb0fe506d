// SPDX-License-Identifier: Apache-2.0
#include "wnf/dictionary.hpp"

#include <cmath>
#include <stdexcept>

#include "wnf/csv.hpp"

namespace wnf {

void RingPolicy::validate() const {
    if (!(coherence_threshold > 0.0 && coherence_threshold < 1.0))
        throw std::invalid_argument("RingPolicy: coherence_threshold must lie in (0, 1)");
    if (g_delta_m <= 0.0) throw std::invalid_argument("RingPolicy: g_delta_m must be positive");
    if (!(r_min_m > 0.0 && r_min_m < r_max_m))
        throw std::invalid_argument("RingPolicy: need 0 < r_min < r_max");
}

RingPolicy make_ring_policy(double delta, const ArrayConfig& array, double r_min, double r_max) {
    RingPolicy p;
    p.coherence_threshold = delta;
    p.zeta_delta = solve_zeta(delta, array.n_elements);
    const double d_ap = array.aperture_m();
    p.g_delta_m = d_ap * d_ap / (2.0 * p.zeta_delta * p.zeta_delta * array.wavelength_m());
    p.r_min_m = r_min > 0.0 ? r_min : d_ap;
    p.r_max_m = r_max > 0.0 ? r_max : array.rayleigh_distance_m();
    p.validate();
    return p;
}

std::vector<double> angle_grid(int n_elements) {
    const int count = n_elements / 2;
    std::vector<double> out(count);
    for (int n = 0; n < count; ++n) out[n] = -0.5 + (2.0 * n + 1.0) / n_elements;
    return out;
}

std::vector<double> angle_grid(const ArrayConfig& array) { return angle_grid(array.n_elements); }

std::vector<std::pair<int, double>> distance_rings(double alpha, const RingPolicy& policy,
                                                   const WidebandConfig& wb) {
    if (!(std::abs(alpha) < 1.0)) throw std::invalid_argument("distance_rings: need |alpha| < 1");
    policy.validate();
    const double g_alpha = policy.g_delta_m * (1.0 - alpha * alpha);
    const double dr = wb.distance_resolution_m();
    const double inv_gap = 1.0 / g_alpha;

    std::vector<std::pair<int, double>> rings;
    double r_prev = policy.r_max_m;
    long m_prev = 0;  // lattice index of r_prev; ranges kept as r_max - m*dr
    int l = static_cast<int>(std::ceil(g_alpha / policy.r_max_m));
    if (l < 1) l = 1;

    while (true) {
        const double r_ideal = g_alpha / l;
        long k;
        if (r_ideal >= r_prev - dr) {
            k = 1;  // ideal within one lattice bin (or above): clamp
        } else if (r_prev <= g_alpha) {
            // Fresnel-binding depth: land on the outermost lattice point
            // at or below the ideal ring.
            k = static_cast<long>(std::ceil((r_prev - r_ideal) / dr - 1e-12));
            if (k < 1) k = 1;
        } else {
            // Above G_alpha the curvature cannot separate rings; the
            // bandwidth lattice carries orthogonality, step one bin.
            k = 1;
        }
        long m_next = m_prev + k;
        double r_next = policy.r_max_m - m_next * dr;
        if (r_prev <= g_alpha && !rings.empty()) {
            // enforce the consecutive inverse-distance gap where Fresnel binds
            while (r_next >= policy.r_min_m &&
                   (1.0 / r_next - 1.0 / r_prev) < inv_gap - 1e-12) {
                ++m_next;
                r_next = policy.r_max_m - m_next * dr;
            }
        }
        if (r_next < policy.r_min_m) break;
        rings.emplace_back(l, r_next);
        r_prev = r_next;
        m_prev = m_next;
        ++l;
    }
    return rings;
}

PolarGrid build_grid(const ArrayConfig& array, const WidebandConfig& wb, const RingPolicy& policy) {
    PolarGrid grid;
    grid.angle_pitch = 2.0 / array.n_elements;
    grid.range_pitch_m = wb.distance_resolution_m();
    const std::vector<double> alphas = angle_grid(array);
    for (int ai = 0; ai < static_cast<int>(alphas.size()); ++ai) {
        for (const auto& [l, r] : distance_rings(alphas[ai], policy, wb))
            grid.atoms.push_back({alphas[ai], r, l, ai});
    }
    if (grid.atoms.empty())
        throw std::runtime_error(
            "build_grid: empty grid (r_min/r_max window admits no bandwidth-aligned rings)");
    return grid;
}

Dictionary build_dictionary(const PolarGrid& grid, const ArrayConfig& array,
                            const WidebandConfig& wb, std::size_t max_elements) {
    if (grid.atoms.empty()) throw std::invalid_argument("build_dictionary: empty grid");
    const std::size_t nm = static_cast<std::size_t>(array.n_elements) * wb.n_subcarriers;
    const std::size_t q = grid.atoms.size();
    if (nm * q > max_elements)
        throw std::length_error("build_dictionary: NM*Q = " + std::to_string(nm * q) +
                                " exceeds the element cap " + std::to_string(max_elements));

    Dictionary dict;
    dict.grid = grid;
    dict.matrix.resize(static_cast<Eigen::Index>(nm), static_cast<Eigen::Index>(q));
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t col = 0; col < static_cast<std::ptrdiff_t>(q); ++col) {
        const PolarAtom& atom = grid.atoms[col];
        const SteeringVector sv = steering_vector(atom.range_m, std::acos(atom.alpha), array, wb,
                                                  WavefrontModel::exact, /*normalize=*/true);
        dict.matrix.col(col) = sv.entries;
    }
    return dict;
}

std::size_t grid_nearest(const PolarGrid& grid, double range_m, double theta_rad) {
    if (grid.atoms.empty()) throw std::invalid_argument("grid_nearest: empty grid");
    const double alpha = std::cos(theta_rad);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < grid.atoms.size(); ++i) {
        const double da = (grid.atoms[i].alpha - alpha) / grid.angle_pitch;
        const double drr = (grid.atoms[i].range_m - range_m) / grid.range_pitch_m;
        const double metric = da * da + drr * drr;
        if (metric < best - 1e-15) {
            best = metric;
            best_idx = i;
        }
    }
    return best_idx;
}

void write_grid_csv(const PolarGrid& grid, const std::string& path,
                    const std::string& meta_comment) {
    CsvWriter csv(path, meta_comment);
    csv.header({"angle_index", "ring_index", "alpha", "theta_deg", "range_m"});
    for (const auto& a : grid.atoms) {
        csv.field(a.angle_index);
        csv.field(a.ring_index);
        csv.field(a.alpha);
        csv.field(std::acos(a.alpha) * 180.0 / kPi);
        csv.field(a.range_m);
        csv.end_row();
    }
}

}  // namespace wnf
