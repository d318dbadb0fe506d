// SPDX-License-Identifier: Apache-2.0
#ifndef WNF_DICTIONARY_HPP
#define WNF_DICTIONARY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "wnf/coherence.hpp"
#include "wnf/model.hpp"

namespace wnf {

/// Distance-ring construction parameters. G_delta = D^2 / (2 zeta^2 lambda_c)
/// is the inverse-distance orthogonality scale for the chosen coherence
/// threshold; [r_min, r_max] is the sampled radial window.
struct RingPolicy {
    double coherence_threshold;  // Delta in (0, 1)
    double zeta_delta;
    double g_delta_m;
    double r_min_m;
    double r_max_m;

    void validate() const;
};

/// Policy from a coherence threshold; r_min/r_max default to the radiative
/// near-field window [D, 2 D^2 / lambda_c].
RingPolicy make_ring_policy(double delta, const ArrayConfig& array,
                            double r_min = 0.0, double r_max = 0.0);

struct PolarAtom {
    double alpha;
    double range_m;
    int ring_index;
    int angle_index;
};

struct PolarGrid {
    std::vector<PolarAtom> atoms;
    double angle_pitch;     // 2/N
    double range_pitch_m;   // c/B
    std::size_t size() const { return atoms.size(); }
};

/// Exact-wavefront overcomplete dictionary on a polar grid; columns are
/// unit-norm steering vectors, one per atom.
struct Dictionary {
    CMat matrix;  // NM x Q
    PolarGrid grid;
};

/// Uniform directional-cosine grid alpha_n = -1/2 + (2n+1)/N for
/// n = 0 .. floor(N/2)-1; consecutive points differ by exactly 2/N.
std::vector<double> angle_grid(int n_elements);
std::vector<double> angle_grid(const ArrayConfig& array);

/// Non-uniform distance rings for one angular ray: the outside-in recursion
/// anchored at r_max, quantized to the bandwidth lattice (steps of
/// k * c/B, k >= 1). Where the Fresnel mechanism binds (r <= G_delta (1-a^2))
/// consecutive rings keep an inverse-distance gap of at least
/// 1 / (G_delta (1-a^2)); elsewhere the lattice step alone applies.
std::vector<std::pair<int, double>> distance_rings(double alpha, const RingPolicy& policy,
                                                   const WidebandConfig& wb);

/// Union of distance_rings over the angle grid.
PolarGrid build_grid(const ArrayConfig& array, const WidebandConfig& wb, const RingPolicy& policy);

/// Assembles the NM x Q atom matrix with exact-model (Eq-1 distance) columns.
/// Throws when NM * Q exceeds max_elements.
Dictionary build_dictionary(const PolarGrid& grid, const ArrayConfig& array,
                            const WidebandConfig& wb,
                            std::size_t max_elements = std::size_t(1) << 28);

/// Index of the atom minimizing the pitch-normalized polar metric
/// (d_alpha / (2/N))^2 + (d_r / (c/B))^2; ties break to the lowest index.
std::size_t grid_nearest(const PolarGrid& grid, double range_m, double theta_rad);

/// CSV export: angle_index,ring_index,alpha,theta_deg,range_m.
void write_grid_csv(const PolarGrid& grid, const std::string& path,
                    const std::string& meta_comment);

}  // namespace wnf

#endif
