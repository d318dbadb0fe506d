// SPDX-License-Identifier: Apache-2.0
#ifndef WNF_HARNESS_HPP
#define WNF_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wnf/boundaries.hpp"
#include "wnf/dictionary.hpp"
#include "wnf/recovery.hpp"
#include "wnf/subspace.hpp"

namespace wnf {

/// Config file / CLI problems -> exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Dimension caps (dictionary elements, NM eigensolve) -> exit code 3.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Boundary threshold unsatisfiable on its window -> exit code 4.
struct UnsatisfiableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TargetSpec {
    double range_m;
    double theta_deg;
    std::optional<cplx> gain;  // free-space path loss when absent
};

struct SweepSpec {
    std::vector<double> distances_m;
    double theta_deg = 90.0;
    int p = 1;
};

/// One experiment: geometry, frequency plan, ring policy inputs, scenario.
struct ExperimentConfig {
    ArrayConfig array;
    WidebandConfig wb;
    double delta = 0.1;          // dictionary coherence threshold
    double r_min_m = 0.0;        // 0 -> D
    double r_max_m = 0.0;        // 0 -> Rayleigh distance
    double snr_db = 0.0;
    std::uint64_t seed = 1;
    int trials = 50;
    std::vector<TargetSpec> targets;
    std::optional<SweepSpec> sweep;
    int wbff_cap = 4096;
    std::string raw_json;  // canonical serialization for the config hash

    RingPolicy ring_policy() const;
    std::vector<Target> scenario_targets() const;
    std::string hash() const;
};

/// Parses the JSON config document; missing keys take the full-scale
/// defaults (N=127, f_c=28 GHz, M=256, df=480 kHz, delta=0.1, snr=0 dB,
/// K=100). Unknown keys are an error naming the key.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json_text(const std::string& text);

struct LocalizeOutput {
    EstimateSet estimates;
    RecoveryResult recovery;
    MatchScore score;
};

/// Grid + dictionary + SOMP end to end; writes coefficients and estimates CSVs.
LocalizeOutput run_localize(const ExperimentConfig& cfg, const std::string& out_dir);

enum class MusicVariant { nbnf, wbff };

/// Covariance -> noise subspace -> spectrum; writes spectrum and peaks CSVs.
EstimateSet run_music(const ExperimentConfig& cfg, MusicVariant variant,
                      const std::string& out_dir);

enum class SweepVariable { bandwidth, aperture };

struct BoundaryRow {
    std::string sweep_var;
    double value;
    double rho;
    double boundary_m;  // -1 marks an unsatisfiable threshold
};

/// Tabulates r_NB-NF (bandwidth sweep) or r_WB-FF (aperture sweep) per
/// (sweep value, rho); writes the boundary CSV.
std::vector<BoundaryRow> run_boundary_sweep(const ExperimentConfig& cfg, SweepVariable var,
                                            const std::vector<double>& sweep_values,
                                            const std::vector<double>& rho_list,
                                            const std::string& out_dir);

struct SweepRow {
    double distance_m;
    std::string method;  // cs | nbnf_music | wbff_music
    double nmse;         // median over trials
    int trials;
};

/// Monte-Carlo NMSE-versus-distance comparison of the three methods; one row
/// per (distance, method); writes the sweep CSV.
std::vector<SweepRow> run_nmse_sweep(const ExperimentConfig& cfg, const std::string& out_dir);

/// Curvature-coherence magnitude versus zeta, both evaluation routes
/// (Fresnel-integral form and direct quadratic-phase sum); writes
/// coherence_curve.csv.
void run_coherence_curve(const ExperimentConfig& cfg, const std::string& out_dir);

/// Library version string (also recorded in every CSV metadata line).
std::string version();

}  // namespace wnf

#endif
