// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "wnf/harness.hpp"

using namespace wnf;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("wnf_harness_" + tag);
    std::filesystem::remove_all(p);
    return p;
}

const char* kDeskLocalize = R"({
  "n_elements": 33, "n_subcarriers": 64, "subcarrier_spacing_hz": 1.92e6,
  "n_symbols": 20, "snr_db": 300, "seed": 5,
  "targets": [{"range_m": 3.04, "theta_deg": 95.0}, {"range_m": 0.61, "theta_deg": 101.0}]
})";

}  // namespace

TEST_CASE("config defaults and validation") {
    const ExperimentConfig cfg = config_from_json_text("{}");
    CHECK(cfg.array.n_elements == 127);
    CHECK(cfg.array.carrier_freq_hz == doctest::Approx(28e9));
    CHECK(cfg.wb.n_subcarriers == 256);
    CHECK(cfg.wb.subcarrier_spacing_hz == doctest::Approx(480e3));
    CHECK(cfg.wb.n_symbols == 100);
    CHECK(cfg.delta == doctest::Approx(0.1));
    CHECK(cfg.snr_db == 0.0);

    CHECK_THROWS_WITH_AS(config_from_json_text(R"({"n_elements": 128})"),
                         doctest::Contains("odd"), ConfigError);
    CHECK_THROWS_WITH_AS(config_from_json_text(R"({"snr_db": "abc"})"),
                         doctest::Contains("snr_db"), ConfigError);
    CHECK_THROWS_WITH_AS(config_from_json_text(R"({"mystery_knob": 3})"),
                         doctest::Contains("mystery_knob"), ConfigError);
    CHECK_THROWS_WITH_AS(config_from_json_text(R"({"targets": [{"range_m": 1}]})"),
                         doctest::Contains("theta_deg"), ConfigError);
    CHECK_THROWS_WITH_AS(config_from_json_text(R"({"sweep": {"distances_m": [1], "p": 0}})"),
                         doctest::Contains("sweep.p"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text("not json"), ConfigError);

    // hash tracks the canonical serialization
    const ExperimentConfig c1 = config_from_json_text(R"({"seed": 7})");
    const ExperimentConfig c2 = config_from_json_text(R"({"seed": 8})");
    CHECK(c1.hash() != c2.hash());
    CHECK(c1.hash() == config_from_json_text(R"({"seed": 7})").hash());
}

TEST_CASE("localize runs end to end and is deterministic") {
    const ExperimentConfig cfg = config_from_json_text(kDeskLocalize);
    const auto dir_a = temp_dir("loc_a");
    const auto dir_b = temp_dir("loc_b");

    const LocalizeOutput out = run_localize(cfg, dir_a.string());
    REQUIRE(out.estimates.estimates.size() == 2);

    // on-grid noiseless scenario: estimates land on the nearest atoms exactly
    const PolarGrid grid = build_grid(cfg.array, cfg.wb, cfg.ring_policy());
    const auto targets = cfg.scenario_targets();
    for (const auto& t : targets) {
        const std::size_t want = grid_nearest(grid, t.range_m, t.theta_rad);
        bool found = false;
        for (const auto& e : out.estimates.estimates)
            if (e.range_m == doctest::Approx(grid.atoms[want].range_m) &&
                e.theta_rad == doctest::Approx(std::acos(grid.atoms[want].alpha)))
                found = true;
        CHECK(found);
    }
    CHECK(out.score.nmse < 0.02);

    run_localize(cfg, dir_b.string());
    CHECK(slurp(dir_a / "coefficients.csv") == slurp(dir_b / "coefficients.csv"));
    CHECK(slurp(dir_a / "estimates.csv") == slurp(dir_b / "estimates.csv"));

    CHECK_THROWS_AS(run_localize(config_from_json_text("{}"), dir_a.string()), ConfigError);
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("music harness on the dual-target scene") {
    // desk analogue of the two-target near-field scene
    const char* text = R"({
      "n_elements": 33, "n_subcarriers": 64, "subcarrier_spacing_hz": 1.92e6,
      "n_symbols": 50, "snr_db": 0, "seed": 3,
      "targets": [{"range_m": 0.35, "theta_deg": 112.2}, {"range_m": 0.8, "theta_deg": 102.0}]
    })";
    const ExperimentConfig cfg = config_from_json_text(text);
    const auto dir = temp_dir("music");
    const EstimateSet peaks = run_music(cfg, MusicVariant::nbnf, dir.string());
    REQUIRE(peaks.estimates.size() == 2);
    for (const auto& t : cfg.scenario_targets()) {
        double best = 1e300;
        for (const auto& e : peaks.estimates) {
            const double da = e.theta_rad - t.theta_rad;
            const double drel = (e.range_m - t.range_m) / t.range_m;
            best = std::min(best, std::abs(da) + std::abs(drel));
        }
        CHECK(best < 0.25);  // both targets resolved nearby
    }
    CHECK(std::filesystem::exists(dir / "music_nbnf_spectrum.csv"));
    CHECK(std::filesystem::exists(dir / "music_nbnf_peaks.csv"));

    // full-scale config exceeds the wideband eigensolve cap
    const char* big = R"({"targets": [{"range_m": 5.0, "theta_deg": 90.0}]})";
    CHECK_THROWS_AS(run_music(config_from_json_text(big), MusicVariant::wbff, dir.string()),
                    CapacityError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("boundary sweep harness") {
    const ExperimentConfig cfg = config_from_json_text("{}");
    const auto dir = temp_dir("bound");

    const auto rows = run_boundary_sweep(cfg, SweepVariable::bandwidth, {5e6, 20e6}, {0.9},
                                         dir.string());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].sweep_var == "bandwidth_hz");
    CHECK(rows[0].boundary_m > rows[1].boundary_m);  // shrinks with bandwidth
    CHECK(std::filesystem::exists(dir / "boundary_sweep.csv"));

    const auto ap = run_boundary_sweep(cfg, SweepVariable::aperture, {0.3}, {0.8, 0.9},
                                       dir.string());
    REQUIRE(ap.size() == 2);
    CHECK(ap[0].sweep_var == "aperture_m");
    CHECK(ap[0].boundary_m > 0.0);
    CHECK(ap[0].boundary_m < ap[1].boundary_m);  // stricter threshold sits farther out

    CHECK_THROWS_AS(run_boundary_sweep(cfg, SweepVariable::bandwidth, {}, {0.9}, dir.string()),
                    ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("nmse sweep harness on a small config") {
    const char* text = R"({
      "n_elements": 31, "n_subcarriers": 32, "subcarrier_spacing_hz": 7.68e6,
      "n_symbols": 12, "trials": 10, "seed": 2, "snr_db": 0,
      "sweep": {"distances_m": [0.6, 2.4], "theta_deg": 90.0, "p": 1}
    })";
    const ExperimentConfig cfg = config_from_json_text(text);
    const auto dir = temp_dir("nmse");
    const auto rows = run_nmse_sweep(cfg, dir.string());
    REQUIRE(rows.size() == 6);  // 2 distances x 3 methods
    for (const auto& r : rows) {
        CHECK(r.nmse >= 0.0);
        CHECK(r.trials == 10);
    }
    // every (distance, method) pair appears exactly once
    std::set<std::pair<double, std::string>> seen;
    for (const auto& r : rows) CHECK(seen.insert({r.distance_m, r.method}).second);
    CHECK(std::filesystem::exists(dir / "nmse_sweep.csv"));

    ExperimentConfig low = cfg;
    low.trials = 5;
    CHECK_THROWS_AS(run_nmse_sweep(low, dir.string()), ConfigError);

    ExperimentConfig nosweep = cfg;
    nosweep.sweep.reset();
    CHECK_THROWS_AS(run_nmse_sweep(nosweep, dir.string()), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("coherence curve export") {
    const ExperimentConfig cfg = config_from_json_text("{}");
    const auto dir = temp_dir("coh");
    run_coherence_curve(cfg, dir.string());
    const std::string body = slurp(dir / "coherence_curve.csv");
    CHECK(body.find("zeta,coherence_fresnel,coherence_sum") != std::string::npos);
    CHECK(body.find("# config_hash=") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("full-scale localization scene") {
    // three targets across the near-field window, default geometry, 0 dB
    const char* text = R"({
      "seed": 12, "n_symbols": 100, "snr_db": 0,
      "targets": [{"range_m": 9.3, "theta_deg": 75.0},
                  {"range_m": 25.6, "theta_deg": 95.0},
                  {"range_m": 52.1, "theta_deg": 110.0}]
    })";
    const ExperimentConfig cfg = config_from_json_text(text);
    const auto dir = temp_dir("fig3");
    const LocalizeOutput out = run_localize(cfg, dir.string());
    REQUIRE(out.estimates.estimates.size() == 3);

    // every estimate sits on the atom nearest to one of the truths
    const PolarGrid grid = build_grid(cfg.array, cfg.wb, cfg.ring_policy());
    for (const auto& t : cfg.scenario_targets()) {
        const auto& atom = grid.atoms[grid_nearest(grid, t.range_m, t.theta_rad)];
        bool found = false;
        for (const auto& e : out.estimates.estimates)
            if (std::abs(e.range_m - atom.range_m) < 1e-9 &&
                std::abs(std::cos(e.theta_rad) - atom.alpha) < 1e-12)
                found = true;
        CHECK(found);
    }

    // three dominant coefficient magnitudes in the export
    std::ifstream in(dir / "coefficients.csv");
    std::string line;
    std::getline(in, line);  // meta
    std::getline(in, line);  // header
    int nonzero = 0;
    while (std::getline(in, line)) {
        const auto pos = line.rfind(',');
        if (std::stod(line.substr(pos + 1)) > 0.0) ++nonzero;
    }
    CHECK(nonzero == 3);
    std::filesystem::remove_all(dir);
}
