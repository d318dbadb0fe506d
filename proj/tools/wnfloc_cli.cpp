// SPDX-License-Identifier: Apache-2.0
//
// wnfloc: wideband near-field localization experiments.
//
// Subcommands mirror the library harness: coherence-curve, grid, localize,
// music, boundary, nmse-sweep. Exit codes: 0 success, 2 config error,
// 3 capacity error, 4 unsatisfiable constraint.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wnf/csv.hpp"
#include "wnf/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitUnsatisfiable = 4;

wnf::ExperimentConfig load_or_default(const std::string& config_path, std::uint64_t seed,
                                      bool seed_set) {
    std::string text = "{}";
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw wnf::ConfigError("config file not found: " + config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    if (seed_set) {
        try {
            auto doc = nlohmann::json::parse(text);
            doc["seed"] = seed;
            text = doc.dump();
        } catch (const nlohmann::json::exception& e) {
            throw wnf::ConfigError(std::string("config parse failure: ") + e.what());
        }
    }
    return wnf::config_from_json_text(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wideband near-field localization toolbox"};
    app.require_subcommand(1);
    app.fallthrough(true);  // global flags may follow the subcommand

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option_function<std::uint64_t>(
           "--seed", [&](std::uint64_t s) { seed = s; seed_set = true; }, "RNG seed override");

    auto* sc_coh = app.add_subcommand("coherence-curve", "curvature coherence |F| versus zeta");
    auto* sc_grid = app.add_subcommand("grid", "build and export the polar sampling grid");
    auto* sc_loc = app.add_subcommand("localize", "grid + dictionary + SOMP end to end");

    auto* sc_music = app.add_subcommand("music", "subspace benchmark spectrum");
    std::string variant = "nbnf";
    sc_music->add_option("--variant", variant, "nbnf|wbff")
        ->check(CLI::IsMember({"nbnf", "wbff"}));

    auto* sc_bound = app.add_subcommand("boundary", "regime boundary sweep");
    std::string sweep_kind = "bandwidth";
    std::vector<double> sweep_values;
    std::vector<double> rho_list;
    sc_bound->add_option("--sweep", sweep_kind, "bandwidth|aperture")
        ->check(CLI::IsMember({"bandwidth", "aperture"}));
    sc_bound->add_option("--values", sweep_values, "sweep values (Hz or m)");
    sc_bound->add_option("--rho", rho_list, "correlation thresholds");

    auto* sc_nmse = app.add_subcommand("nmse-sweep", "Monte-Carlo NMSE versus distance");

    CLI11_PARSE(app, argc, argv);

    try {
        const wnf::ExperimentConfig cfg = load_or_default(config_path, seed, seed_set);

        if (sc_coh->parsed()) {
            wnf::run_coherence_curve(cfg, out_dir);
        } else if (sc_grid->parsed()) {
            const wnf::PolarGrid grid = wnf::build_grid(cfg.array, cfg.wb, cfg.ring_policy());
            std::filesystem::create_directories(out_dir);
            wnf::write_grid_csv(grid, (std::filesystem::path(out_dir) / "grid.csv").string(),
                                wnf::meta_line(cfg.hash(), cfg.seed));
            std::cout << "grid atoms: " << grid.size() << "\n";
        } else if (sc_loc->parsed()) {
            const wnf::LocalizeOutput out = wnf::run_localize(cfg, out_dir);
            std::cout << "recovered " << out.estimates.estimates.size()
                      << " targets, nmse=" << out.score.nmse << "\n";
        } else if (sc_music->parsed()) {
            const auto peaks = wnf::run_music(
                cfg, variant == "nbnf" ? wnf::MusicVariant::nbnf : wnf::MusicVariant::wbff,
                out_dir);
            std::cout << "peaks: " << peaks.estimates.size() << "\n";
        } else if (sc_bound->parsed()) {
            if (sweep_values.empty())
                sweep_values = (sweep_kind == "bandwidth")
                                   ? std::vector<double>{5e6, 10e6, 20e6, 50e6, 100e6}
                                   : std::vector<double>{0.2, 0.5, 1.0, 1.5, 1.8};
            if (rho_list.empty()) rho_list = {0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
            wnf::run_boundary_sweep(cfg,
                                    sweep_kind == "bandwidth" ? wnf::SweepVariable::bandwidth
                                                              : wnf::SweepVariable::aperture,
                                    sweep_values, rho_list, out_dir);
        } else if (sc_nmse->parsed()) {
            wnf::run_nmse_sweep(cfg, out_dir);
        }
    } catch (const wnf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const wnf::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const wnf::UnsatisfiableError& e) {
        std::cerr << "unsatisfiable constraint: " << e.what() << "\n";
        return kExitUnsatisfiable;
    } catch (const std::length_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
