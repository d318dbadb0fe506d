// SPDX-License-Identifier: Apache-2.0
#ifndef WNF_MODEL_HPP
#define WNF_MODEL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wnf/common.hpp"

namespace wnf {

/// Uniform linear array along the x axis, elements indexed symmetrically
/// about the phase center. N must be odd (N = 2N' + 1).
struct ArrayConfig {
    int n_elements = 127;
    double spacing_m = 0.0;        // 0 selects half-wavelength spacing
    double carrier_freq_hz = 28e9;

    ArrayConfig() { finalize(); }
    ArrayConfig(int n, double fc, double d = 0.0)
        : n_elements(n), spacing_m(d), carrier_freq_hz(fc) {
        finalize();
    }

    double wavelength_m() const { return kSpeedOfLight / carrier_freq_hz; }
    double aperture_m() const { return (n_elements - 1) * spacing_m; }
    double carrier_wavenumber() const { return 2.0 * kPi / wavelength_m(); }
    int half_count() const { return (n_elements - 1) / 2; }  // N'

    /// Conventional near/far boundary 2 D^2 / lambda_c.
    double rayleigh_distance_m() const {
        const double d = aperture_m();
        return 2.0 * d * d / wavelength_m();
    }

private:
    void finalize() {
        if (carrier_freq_hz <= 0.0)
            throw std::invalid_argument("ArrayConfig: carrier_freq_hz must be positive");
        if (spacing_m == 0.0) spacing_m = wavelength_m() / 2.0;
        if (n_elements < 3 || n_elements % 2 == 0)
            throw std::invalid_argument(
                "ArrayConfig: n_elements must be odd and >= 3, got " + std::to_string(n_elements));
        if (spacing_m <= 0.0)
            throw std::invalid_argument("ArrayConfig: spacing_m must be positive");
    }
};

/// OFDM frequency plan: M subcarriers spaced by delta_f, K pilot symbols.
struct WidebandConfig {
    int n_subcarriers = 256;
    double subcarrier_spacing_hz = 480e3;
    int n_symbols = 100;

    WidebandConfig() = default;
    WidebandConfig(int m, double df, int k)
        : n_subcarriers(m), subcarrier_spacing_hz(df), n_symbols(k) {
        validate();
    }

    void validate() const {
        if (n_subcarriers < 1) throw std::invalid_argument("WidebandConfig: n_subcarriers must be >= 1");
        if (n_symbols < 1) throw std::invalid_argument("WidebandConfig: n_symbols must be >= 1");
        if (subcarrier_spacing_hz <= 0.0)
            throw std::invalid_argument("WidebandConfig: subcarrier_spacing_hz must be positive");
    }

    double bandwidth_hz() const { return n_subcarriers * subcarrier_spacing_hz; }
    double distance_resolution_m() const { return kSpeedOfLight / bandwidth_hz(); }
    /// k_m = 2 pi (f_c + m df) / c, strictly increasing in m.
    double wavenumber(int m, const ArrayConfig& array) const {
        return 2.0 * kPi * (array.carrier_freq_hz + m * subcarrier_spacing_hz) / kSpeedOfLight;
    }
    double wavenumber_increment() const { return 2.0 * kPi * subcarrier_spacing_hz / kSpeedOfLight; }
};

/// Point scatterer at polar position (r, theta) with complex path gain.
struct Target {
    double range_m;
    double theta_rad;
    cplx gain;

    Target(double r, double theta, cplx g) : range_m(r), theta_rad(theta), gain(g) {}

    /// Gain defaults to the free-space path loss c / (4 pi f_c r).
    Target(double r, double theta, const ArrayConfig& array)
        : Target(r, theta, cplx(kSpeedOfLight / (4.0 * kPi * array.carrier_freq_hz * r), 0.0)) {}

    double alpha() const { return std::cos(theta_rad); }

    /// Radiative near-field window D < r < R_r and field of view 60..120 deg.
    void validate(const ArrayConfig& array) const {
        if (!(range_m > array.aperture_m() && range_m < array.rayleigh_distance_m()))
            throw std::invalid_argument("Target: range outside the radiative near-field window (D, R_r)");
        if (!(theta_rad > kPi / 3.0 && theta_rad < 2.0 * kPi / 3.0))
            throw std::invalid_argument("Target: angle outside the field of view (60, 120) deg");
    }
};

enum class WavefrontModel { exact, fresnel, planar };

WavefrontModel parse_wavefront_model(const std::string& tag);

/// Joint spatial-frequency response, length N*M, subcarrier-major (block m
/// holds antennas n = 0..N-1).
struct SteeringVector {
    CVec entries;
    WavefrontModel model;
    bool normalized;
};

/// Received frequency-domain data over K symbols plus the pilots that
/// generated it and the realized noise variance.
struct SnapshotMatrix {
    CMat data;            // NM x K
    CMat pilot_symbols;   // P x K
    double noise_variance = 0.0;
};

struct Estimate {
    double range_m;
    double theta_rad;
};

struct EstimateSet {
    std::vector<Estimate> estimates;
};

/// Signed symmetric element offsets delta_n = n - (N-1)/2.
std::vector<int> element_offsets(const ArrayConfig& array);

/// Element-to-target distance sqrt(r^2 + dn^2 d^2 - 2 r dn d cos(theta)).
double exact_distance(const Target& target, int n, const ArrayConfig& array);

/// Second-order Taylor expansion r0 - dn d a + dn^2 d^2 (1 - a^2) / (2 r0).
double fresnel_distance(double r0, double alpha, int n, const ArrayConfig& array);

/// Planar-wavefront distance r - dn d cos(theta).
double planar_distance(double r, double alpha, int n, const ArrayConfig& array);

SteeringVector steering_vector(double range_m, double theta_rad, const ArrayConfig& array,
                               const WidebandConfig& wb, WavefrontModel model, bool normalize);

double rayleigh_distance(const ArrayConfig& array);

/// Synthesizes Y = sum_p beta_p a(r_p, theta_p) s_p^T + W with exact-model
/// steering vectors, seeded unit-modulus pilots and white circular noise
/// scaled so the mean per-entry SNR equals snr_db. Deterministic per seed.
SnapshotMatrix synthesize_snapshots(const std::vector<Target>& targets, const ArrayConfig& array,
                                    const WidebandConfig& wb, double snr_db, std::uint64_t seed);

/// Same synthesis with an explicit noise variance instead of a per-call SNR;
/// used by distance sweeps that anchor sigma^2 once so the received SNR falls
/// off with range through the path gains.
SnapshotMatrix synthesize_snapshots_sigma(const std::vector<Target>& targets,
                                          const ArrayConfig& array, const WidebandConfig& wb,
                                          double noise_variance, std::uint64_t seed);

/// Mean per-entry power of the noiseless synthesized signal for a scenario;
/// sigma^2 = reference_power / 10^(snr_db/10) anchors a sweep's noise floor.
double mean_signal_power(const std::vector<Target>& targets, const ArrayConfig& array,
                         const WidebandConfig& wb);

}  // namespace wnf

#endif
