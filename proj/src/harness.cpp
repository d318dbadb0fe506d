// SPDX-License-Identifier: Apache-2.0
#include "wnf/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "wnf/csv.hpp"
#include "wnf/serial.hpp"

namespace wnf {
namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError("config field '" + path + "' must be a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError("config field '" + path + "' must be an integer");
    return j.get<int>();
}

std::uint64_t require_u64(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !j.is_number_integer())
        throw ConfigError("config field '" + path + "' must be an unsigned integer");
    return j.get<std::uint64_t>();
}

void check_known_keys(const json& obj, const std::vector<std::string>& known,
                      const std::string& scope) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw ConfigError("unknown config key '" + scope + it.key() + "'");
    }
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::filesystem::path prep_dir(const std::string& out_dir) {
    std::filesystem::path p(out_dir);
    std::filesystem::create_directories(p);
    return p;
}

/// Sweep axes used by the NMSE comparison; coarser than the single-shot
/// spectrum default to keep Monte-Carlo runtime reasonable.
SearchAxes sweep_axes(double r_min, double r_max) {
    return default_axes(r_min, r_max, /*theta_step_deg=*/0.25, /*n_range=*/48);
}

}  // namespace

RingPolicy ExperimentConfig::ring_policy() const {
    return make_ring_policy(delta, array, r_min_m, r_max_m);
}

std::vector<Target> ExperimentConfig::scenario_targets() const {
    std::vector<Target> out;
    out.reserve(targets.size());
    for (const auto& t : targets) {
        const double theta = t.theta_deg * kPi / 180.0;
        if (t.gain)
            out.emplace_back(t.range_m, theta, *t.gain);
        else
            out.emplace_back(t.range_m, theta, array);
    }
    return out;
}

std::string ExperimentConfig::hash() const { return hash_hex(raw_json); }

ExperimentConfig config_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse failure: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

    static const std::vector<std::string> known = {
        "n_elements", "carrier_freq_hz", "spacing_m",  "n_subcarriers", "subcarrier_spacing_hz",
        "n_symbols",  "delta",           "r_min_m",    "r_max_m",       "snr_db",
        "seed",       "trials",          "wbff_cap",   "targets",       "sweep"};
    check_known_keys(doc, known, "");

    ExperimentConfig cfg;
    int n_elements = 127;
    double fc = 28e9, spacing = 0.0, df = 480e3;
    int m_sub = 256, k_sym = 100;

    if (doc.contains("n_elements")) n_elements = require_int(doc["n_elements"], "n_elements");
    if (doc.contains("carrier_freq_hz")) fc = require_number(doc["carrier_freq_hz"], "carrier_freq_hz");
    if (doc.contains("spacing_m")) spacing = require_number(doc["spacing_m"], "spacing_m");
    if (doc.contains("n_subcarriers")) m_sub = require_int(doc["n_subcarriers"], "n_subcarriers");
    if (doc.contains("subcarrier_spacing_hz"))
        df = require_number(doc["subcarrier_spacing_hz"], "subcarrier_spacing_hz");
    if (doc.contains("n_symbols")) k_sym = require_int(doc["n_symbols"], "n_symbols");
    if (doc.contains("delta")) cfg.delta = require_number(doc["delta"], "delta");
    if (doc.contains("r_min_m")) cfg.r_min_m = require_number(doc["r_min_m"], "r_min_m");
    if (doc.contains("r_max_m")) cfg.r_max_m = require_number(doc["r_max_m"], "r_max_m");
    if (doc.contains("snr_db")) cfg.snr_db = require_number(doc["snr_db"], "snr_db");
    if (doc.contains("seed")) cfg.seed = require_u64(doc["seed"], "seed");
    if (doc.contains("trials")) cfg.trials = require_int(doc["trials"], "trials");
    if (doc.contains("wbff_cap")) cfg.wbff_cap = require_int(doc["wbff_cap"], "wbff_cap");

    try {
        cfg.array = ArrayConfig(n_elements, fc, spacing);
        cfg.wb = WidebandConfig(m_sub, df, k_sym);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
        throw ConfigError("config field 'delta' must lie in (0, 1)");
    if (cfg.trials < 1) throw ConfigError("config field 'trials' must be >= 1");
    if (!std::isfinite(cfg.snr_db)) throw ConfigError("config field 'snr_db' must be finite");

    if (doc.contains("targets")) {
        if (!doc["targets"].is_array()) throw ConfigError("config field 'targets' must be an array");
        int idx = 0;
        for (const auto& t : doc["targets"]) {
            const std::string scope = "targets[" + std::to_string(idx) + "].";
            if (!t.is_object()) throw ConfigError("config field '" + scope + "' must be an object");
            check_known_keys(t, {"range_m", "theta_deg", "gain_re", "gain_im"}, scope);
            TargetSpec ts;
            if (!t.contains("range_m") || !t.contains("theta_deg"))
                throw ConfigError("config field '" + scope + "range_m/theta_deg' is required");
            ts.range_m = require_number(t["range_m"], scope + "range_m");
            ts.theta_deg = require_number(t["theta_deg"], scope + "theta_deg");
            if (t.contains("gain_re") || t.contains("gain_im")) {
                const double re = t.contains("gain_re") ? require_number(t["gain_re"], scope + "gain_re") : 0.0;
                const double im = t.contains("gain_im") ? require_number(t["gain_im"], scope + "gain_im") : 0.0;
                ts.gain = cplx(re, im);
            }
            cfg.targets.push_back(ts);
            ++idx;
        }
    }
    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        if (!s.is_object()) throw ConfigError("config field 'sweep' must be an object");
        check_known_keys(s, {"distances_m", "theta_deg", "p"}, "sweep.");
        SweepSpec spec;
        if (!s.contains("distances_m") || !s["distances_m"].is_array())
            throw ConfigError("config field 'sweep.distances_m' must be an array of numbers");
        for (const auto& d : s["distances_m"])
            spec.distances_m.push_back(require_number(d, "sweep.distances_m[]"));
        if (s.contains("theta_deg")) spec.theta_deg = require_number(s["theta_deg"], "sweep.theta_deg");
        if (s.contains("p")) spec.p = require_int(s["p"], "sweep.p");
        if (spec.p < 1) throw ConfigError("config field 'sweep.p' must be >= 1");
        cfg.sweep = spec;
    }

    // canonical serialization with defaults resolved, for the config hash
    json canon;
    canon["n_elements"] = cfg.array.n_elements;
    canon["carrier_freq_hz"] = cfg.array.carrier_freq_hz;
    canon["spacing_m"] = cfg.array.spacing_m;
    canon["n_subcarriers"] = cfg.wb.n_subcarriers;
    canon["subcarrier_spacing_hz"] = cfg.wb.subcarrier_spacing_hz;
    canon["n_symbols"] = cfg.wb.n_symbols;
    canon["delta"] = cfg.delta;
    canon["r_min_m"] = cfg.r_min_m;
    canon["r_max_m"] = cfg.r_max_m;
    canon["snr_db"] = cfg.snr_db;
    canon["seed"] = cfg.seed;
    canon["trials"] = cfg.trials;
    canon["wbff_cap"] = cfg.wbff_cap;
    for (const auto& t : cfg.targets) {
        json jt;
        jt["range_m"] = t.range_m;
        jt["theta_deg"] = t.theta_deg;
        if (t.gain) {
            jt["gain_re"] = t.gain->real();
            jt["gain_im"] = t.gain->imag();
        }
        canon["targets"].push_back(jt);
    }
    if (cfg.sweep) {
        canon["sweep"]["distances_m"] = cfg.sweep->distances_m;
        canon["sweep"]["theta_deg"] = cfg.sweep->theta_deg;
        canon["sweep"]["p"] = cfg.sweep->p;
    }
    cfg.raw_json = canon.dump();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

LocalizeOutput run_localize(const ExperimentConfig& cfg, const std::string& out_dir) {
    if (cfg.targets.empty())
        throw ConfigError("localize requires an explicit 'targets' scenario");
    const auto dir = prep_dir(out_dir);
    const std::string meta = meta_line(cfg.hash(), cfg.seed);

    const RingPolicy policy = cfg.ring_policy();
    const PolarGrid grid = build_grid(cfg.array, cfg.wb, policy);
    Dictionary dict;
    try {
        dict = build_dictionary(grid, cfg.array, cfg.wb);
    } catch (const std::length_error& e) {
        throw CapacityError(e.what());
    }

    const std::vector<Target> targets = cfg.scenario_targets();
    const SnapshotMatrix y = synthesize_snapshots(targets, cfg.array, cfg.wb, cfg.snr_db, cfg.seed);
    LocalizeOutput out;
    out.recovery = somp(y, dict, static_cast<int>(targets.size()));
    out.estimates = extract_estimates(out.recovery, grid);
    out.score = match_and_score(out.estimates, targets);

    write_coefficients_csv(out.recovery, grid, (dir / "coefficients.csv").string(), meta);
    CsvWriter est((dir / "estimates.csv").string(), meta);
    est.header({"estimate_index", "range_m", "theta_deg"});
    for (std::size_t i = 0; i < out.estimates.estimates.size(); ++i) {
        est.field(static_cast<long>(i));
        est.field(out.estimates.estimates[i].range_m);
        est.field(out.estimates.estimates[i].theta_rad * 180.0 / kPi);
        est.end_row();
    }
    return out;
}

EstimateSet run_music(const ExperimentConfig& cfg, MusicVariant variant,
                      const std::string& out_dir) {
    if (cfg.targets.empty()) throw ConfigError("music requires an explicit 'targets' scenario");
    const auto dir = prep_dir(out_dir);
    const std::string meta = meta_line(cfg.hash(), cfg.seed);
    const int p = static_cast<int>(cfg.targets.size());

    const std::vector<Target> targets = cfg.scenario_targets();
    const SnapshotMatrix y = synthesize_snapshots(targets, cfg.array, cfg.wb, cfg.snr_db, cfg.seed);

    const double r_min = cfg.r_min_m > 0.0 ? cfg.r_min_m : cfg.array.aperture_m();
    const double r_max = cfg.r_max_m > 0.0 ? cfg.r_max_m : cfg.array.rayleigh_distance_m();
    const SearchAxes axes = default_axes(r_min, r_max);

    Spectrum spec;
    std::string stem;
    if (variant == MusicVariant::nbnf) {
        const CovarianceMatrix r = spatial_covariance_nb(y, cfg.array, cfg.wb);
        const NoiseSubspace un = noise_subspace(r, p);
        spec = music_spectrum_nbnf(un, axes, cfg.array);
        stem = "music_nbnf";
    } else {
        CovarianceMatrix r;
        try {
            r = full_covariance_wb(y, cfg.wbff_cap);
        } catch (const std::length_error& e) {
            throw CapacityError(std::string(e.what()) +
                                " (the full-scale N*M exceeds the eigensolve budget)");
        }
        const NoiseSubspace un = noise_subspace(r, p);
        spec = music_spectrum_wbff(un, axes, cfg.array, cfg.wb);
        stem = "music_wbff";
    }
    write_spectrum_csv(spec, (dir / (stem + "_spectrum.csv")).string(), meta);

    const EstimateSet peaks = find_peaks(spec, p);
    CsvWriter pk((dir / (stem + "_peaks.csv")).string(), meta);
    pk.header({"peak_index", "theta_deg", "range_m"});
    for (std::size_t i = 0; i < peaks.estimates.size(); ++i) {
        pk.field(static_cast<long>(i));
        pk.field(peaks.estimates[i].theta_rad * 180.0 / kPi);
        pk.field(peaks.estimates[i].range_m);
        pk.end_row();
    }
    return peaks;
}

std::vector<BoundaryRow> run_boundary_sweep(const ExperimentConfig& cfg, SweepVariable var,
                                            const std::vector<double>& sweep_values,
                                            const std::vector<double>& rho_list,
                                            const std::string& out_dir) {
    if (sweep_values.empty() || rho_list.empty())
        throw ConfigError("boundary sweep requires nonempty sweep values and rho list");
    const auto dir = prep_dir(out_dir);
    const std::string meta = meta_line(cfg.hash(), cfg.seed);
    const double theta0 = kPi / 3.0;  // the reference evaluations fix 60 degrees

    std::vector<BoundaryRow> rows;
    for (double value : sweep_values) {
        ArrayConfig array = cfg.array;
        WidebandConfig wb = cfg.wb;
        std::string var_name;
        if (var == SweepVariable::bandwidth) {
            var_name = "bandwidth_hz";
            wb = WidebandConfig(cfg.wb.n_subcarriers, value / cfg.wb.n_subcarriers,
                                cfg.wb.n_symbols);
        } else {
            var_name = "aperture_m";
            const double half_lambda = cfg.array.wavelength_m() / 2.0;
            int n = static_cast<int>(std::lround(value / half_lambda)) + 1;
            if (n % 2 == 0) ++n;
            if (n < 3) n = 3;
            array = ArrayConfig(n, cfg.array.carrier_freq_hz);
        }
        for (double rho : rho_list) {
            const BoundaryQuery q = default_query(rho, array, wb, theta0);
            BoundaryRow row{var_name, value, rho, -1.0};
            try {
                row.boundary_m = (var == SweepVariable::bandwidth)
                                     ? r_nbnf_boundary(q, array, wb)
                                     : r_wbff_boundary(q, array, wb);
            } catch (const std::runtime_error&) {
                std::cerr << "warning: threshold rho=" << rho << " unsatisfiable at " << var_name
                          << "=" << value << "; emitting sentinel -1\n";
            }
            rows.push_back(row);
        }
    }

    CsvWriter csv((dir / "boundary_sweep.csv").string(), meta);
    csv.header({"sweep_var", "value", "rho", "boundary_m"});
    for (const auto& r : rows) {
        csv.field(r.sweep_var);
        csv.field(r.value);
        csv.field(r.rho);
        csv.field(r.boundary_m);
        csv.end_row();
    }
    return rows;
}

std::vector<SweepRow> run_nmse_sweep(const ExperimentConfig& cfg, const std::string& out_dir) {
    if (!cfg.sweep) throw ConfigError("nmse sweep requires a 'sweep' descriptor");
    if (cfg.trials < 10) throw ConfigError("nmse sweep requires trials >= 10");
    const Eigen::Index nm = static_cast<Eigen::Index>(cfg.array.n_elements) * cfg.wb.n_subcarriers;
    if (nm > cfg.wbff_cap)
        throw CapacityError("nmse sweep needs a desk-scale config: N*M = " + std::to_string(nm) +
                            " exceeds the cap " + std::to_string(cfg.wbff_cap));
    const auto dir = prep_dir(out_dir);
    const std::string meta = meta_line(cfg.hash(), cfg.seed);

    const SweepSpec& sweep = *cfg.sweep;
    const double theta = sweep.theta_deg * kPi / 180.0;
    const int p = sweep.p;

    const RingPolicy policy = cfg.ring_policy();
    const PolarGrid grid = build_grid(cfg.array, cfg.wb, policy);
    Dictionary dict;
    try {
        dict = build_dictionary(grid, cfg.array, cfg.wb);
    } catch (const std::length_error& e) {
        throw CapacityError(e.what());
    }

    const double r_min = policy.r_min_m;
    const double r_max = policy.r_max_m;
    const SearchAxes axes = sweep_axes(r_min, r_max);

    // sigma^2 anchored at the innermost distance: the per-entry SNR equals
    // snr_db there and falls off with range through the 1/r path gains
    auto targets_at = [&](double dist) {
        std::vector<Target> targets;
        for (int q = 0; q < p; ++q)
            targets.emplace_back(dist, theta + q * (4.0 * kPi / 180.0), cfg.array);
        return targets;
    };
    const double innermost = *std::min_element(sweep.distances_m.begin(), sweep.distances_m.end());
    const double sigma2 = mean_signal_power(targets_at(innermost), cfg.array, cfg.wb) /
                          std::pow(10.0, cfg.snr_db / 10.0);

    std::vector<SweepRow> rows;
    for (std::size_t di = 0; di < sweep.distances_m.size(); ++di) {
        const double dist = sweep.distances_m[di];
        std::vector<double> nmse_cs(cfg.trials), nmse_nb(cfg.trials), nmse_wb(cfg.trials);

#pragma omp parallel for schedule(dynamic)
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t stream =
                trial_seed(cfg.seed, static_cast<std::uint64_t>(trial) +
                                         (static_cast<std::uint64_t>(di) << 32));
            const std::vector<Target> targets = targets_at(dist);
            const SnapshotMatrix y =
                synthesize_snapshots_sigma(targets, cfg.array, cfg.wb, sigma2, stream);

            const RecoveryResult rec = somp(y, dict, p);
            nmse_cs[trial] = match_and_score(extract_estimates(rec, grid), targets).nmse;

            const CovarianceMatrix rnb = spatial_covariance_nb(y, cfg.array, cfg.wb);
            const NoiseSubspace un_nb = noise_subspace(rnb, p);
            const Spectrum snb = music_spectrum_nbnf(un_nb, axes, cfg.array);
            nmse_nb[trial] = match_and_score(find_peaks(snb, p), targets).nmse;

            const NoiseSubspace un_wb = signal_subspace_from_snapshots(y, p);
            const Spectrum swb = music_spectrum_wbff(un_wb, axes, cfg.array, cfg.wb);
            nmse_wb[trial] = match_and_score(find_peaks(swb, p), targets).nmse;
        }
        rows.push_back({dist, "cs", median(nmse_cs), cfg.trials});
        rows.push_back({dist, "nbnf_music", median(nmse_nb), cfg.trials});
        rows.push_back({dist, "wbff_music", median(nmse_wb), cfg.trials});
    }

    CsvWriter csv((dir / "nmse_sweep.csv").string(), meta);
    csv.header({"distance_m", "method", "nmse", "trials"});
    for (const auto& r : rows) {
        csv.field(r.distance_m);
        csv.field(r.method);
        csv.field(r.nmse);
        csv.field(r.trials);
        csv.end_row();
    }
    return rows;
}

void run_coherence_curve(const ExperimentConfig& cfg, const std::string& out_dir) {
    const auto dir = prep_dir(out_dir);
    CsvWriter csv((dir / "coherence_curve.csv").string(), meta_line(cfg.hash(), cfg.seed));
    csv.header({"zeta", "coherence_fresnel", "coherence_sum"});
    const int n = cfg.array.n_elements;
    const int np = (n - 1) / 2;
    const int points = 2000;
    for (int i = 0; i <= points; ++i) {
        const double zeta = 0.05 * std::pow(100.0 / 0.05, static_cast<double>(i) / points);
        const double x = (zeta / np) * (zeta / np) / 2.0;
        csv.field(zeta);
        csv.field(curvature_coherence_zeta(zeta, n));
        csv.field(curvature_coherence_sum(x, n));
        csv.end_row();
    }
}

std::string version() { return WNF_VERSION; }

}  // namespace wnf
