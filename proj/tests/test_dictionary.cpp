// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "wnf/dictionary.hpp"

using namespace wnf;

namespace {

// wb whose distance resolution equals dr exactly
WidebandConfig wb_with_resolution(double dr) { return WidebandConfig(1, kSpeedOfLight / dr, 1); }

RingPolicy synthetic_policy(double g_alpha0, double r_min, double r_max) {
    // g_delta chosen so that G(1 - 0^2) = g_alpha0 at alpha = 0
    RingPolicy p;
    p.coherence_threshold = 0.1;
    p.zeta_delta = 6.6;
    p.g_delta_m = g_alpha0;
    p.r_min_m = r_min;
    p.r_max_m = r_max;
    return p;
}

}  // namespace

TEST_CASE("angle grid construction") {
    const auto g4 = angle_grid(4);
    REQUIRE(g4.size() == 2);
    CHECK(g4[0] == doctest::Approx(-0.25));
    CHECK(g4[1] == doctest::Approx(0.25));

    const auto g = angle_grid(127);
    REQUIRE(g.size() == 63);
    CHECK(g.front() == doctest::Approx(-0.5 + 1.0 / 127.0));
    for (std::size_t i = 1; i < g.size(); ++i) {
        CHECK(g[i] - g[i - 1] == doctest::Approx(2.0 / 127.0).epsilon(1e-12));
        CHECK(std::abs(g[i]) < 0.5);
    }
    // any grid pair lands on an array-factor null
    CHECK(s_space_linear(g[40] - g[12], 127) < 1e-12);
}

TEST_CASE("distance ring recursion matches the reference trace") {
    const RingPolicy policy = synthetic_policy(100.0, 10.0, 86.4);
    const WidebandConfig wb = wb_with_resolution(2.4414);
    const auto rings = distance_rings(0.0, policy, wb);

    REQUIRE(!rings.empty());
    CHECK(rings[0].first == 2);
    CHECK(rings[0].second == doctest::Approx(86.4 - 15 * 2.4414).epsilon(1e-9));  // 49.779

    // every consecutive pair satisfies the inverse-distance gap bound, and the
    // quantization (which rounded up at every step here) strictly expands the
    // gap relative to the ideal ring pair, whose gap is exactly 1/G
    for (std::size_t i = 1; i < rings.size(); ++i) {
        CHECK(rings[i].second < rings[i - 1].second);
        CHECK(rings[i].first == rings[i - 1].first + 1);
        const double gap = 1.0 / rings[i].second - 1.0 / rings[i - 1].second;
        CHECK(gap >= 1.0 / 100.0 - 1e-9);
        CHECK(gap > 1.0 / 100.0);
    }
    for (const auto& [l, r] : rings) {
        CHECK(r >= policy.r_min_m);
        CHECK(r <= policy.r_max_m);
    }
}

TEST_CASE("distance rings edge cases") {
    const WidebandConfig wb = wb_with_resolution(2.0);
    // window narrower than one resolution bin -> empty
    CHECK(distance_rings(0.0, synthetic_policy(100.0, 9.5, 10.0), wb).empty());
    CHECK_THROWS_AS(distance_rings(1.0, synthetic_policy(100.0, 1.0, 10.0), wb),
                    std::invalid_argument);
}

TEST_CASE("full-scale default grid") {
    const ArrayConfig a(127, 28e9);
    const WidebandConfig wb(256, 480e3, 100);
    const RingPolicy policy = make_ring_policy(0.1, a);
    const PolarGrid grid = build_grid(a, wb, policy);

    const double dr = wb.distance_resolution_m();
    const std::size_t cap =
        63 * (static_cast<std::size_t>((policy.r_max_m - policy.r_min_m) / dr) + 1);
    CHECK(grid.size() <= cap);
    CHECK(grid.size() <= 63u * 36u);
    CHECK(grid.size() > 63u);  // dense lattice, not a degenerate ring set

    int per_angle = 0;
    for (const auto& atom : grid.atoms) {
        if (atom.angle_index == 0) ++per_angle;
        // bandwidth alignment: every ring is an integer number of bins below r_max
        const double steps = (policy.r_max_m - atom.range_m) / dr;
        CHECK(std::abs(steps - std::round(steps)) < 1e-6);
        CHECK(atom.range_m >= policy.r_min_m);
        CHECK(atom.range_m <= policy.r_max_m);
        CHECK(std::abs(atom.alpha) < 0.5);
    }
    const double g_alpha = policy.g_delta_m * (1.0 - grid.atoms[0].alpha * grid.atoms[0].alpha);
    const int l_max = static_cast<int>(std::ceil(g_alpha / policy.r_min_m));
    const int count_cap = static_cast<int>((policy.r_max_m - policy.r_min_m) / dr) + 1;
    CHECK(per_angle <= std::max(l_max, count_cap));

    // pairwise bandwidth alignment across angles (shared r_max anchor)
    Rng rng(3);
    for (int it = 0; it < 200; ++it) {
        const auto& x = grid.atoms[static_cast<std::size_t>(rng.uniform01() * grid.size())];
        const auto& y = grid.atoms[static_cast<std::size_t>(rng.uniform01() * grid.size())];
        const double steps = (x.range_m - y.range_m) / dr;
        CHECK(std::abs(steps - std::round(steps)) < 1e-6);
    }

    // shrinking r_min below the aperture keeps the lattice cap in force
    const RingPolicy deep = make_ring_policy(0.1, a, a.aperture_m() / 4.0);
    const PolarGrid grid2 = build_grid(a, wb, deep);
    const std::size_t cap2 =
        63 * (static_cast<std::size_t>((deep.r_max_m - deep.r_min_m) / dr) + 1);
    CHECK(grid2.size() <= cap2);
}

TEST_CASE("ring policy derived quantities") {
    const ArrayConfig a(127, 28e9);
    const RingPolicy p = make_ring_policy(0.1, a);
    const double d_ap = a.aperture_m();
    CHECK(p.g_delta_m ==
          doctest::Approx(d_ap * d_ap / (2.0 * p.zeta_delta * p.zeta_delta * a.wavelength_m())));
    CHECK(p.r_min_m == doctest::Approx(d_ap));
    CHECK(p.r_max_m == doctest::Approx(a.rayleigh_distance_m()));
    CHECK_THROWS_AS(make_ring_policy(1.5, a), std::invalid_argument);
    CHECK_THROWS_AS(make_ring_policy(0.1, a, 5.0, 2.0), std::invalid_argument);
}

TEST_CASE("fresnel-regime grids keep the inverse-gap bound") {
    Rng rng(17);
    for (int cfg = 0; cfg < 5; ++cfg) {
        const double r_max = 20.0 + 80.0 * rng.uniform01();
        const double g0 = r_max * (1.4 + 2.0 * rng.uniform01());
        const double r_min = r_max * (0.08 + 0.1 * rng.uniform01());
        const double dr = r_max * (0.01 + 0.03 * rng.uniform01());
        const RingPolicy policy = synthetic_policy(g0, r_min, r_max);
        const WidebandConfig wb = wb_with_resolution(dr);
        const ArrayConfig a(31, 28e9);
        const PolarGrid grid = build_grid(a, wb, policy);
        for (std::size_t i = 1; i < grid.atoms.size(); ++i) {
            if (grid.atoms[i].angle_index != grid.atoms[i - 1].angle_index) continue;
            const double g_alpha = g0 * (1.0 - grid.atoms[i].alpha * grid.atoms[i].alpha);
            const double gap = 1.0 / grid.atoms[i].range_m - 1.0 / grid.atoms[i - 1].range_m;
            CHECK(gap >= 1.0 / g_alpha - 1e-9);
        }
    }
}

TEST_CASE("dictionary assembly and gram structure") {
    const ArrayConfig a(33, 28e9);
    const WidebandConfig wb(64, 1.92e6, 1);
    const RingPolicy policy = make_ring_policy(0.1, a);
    const PolarGrid grid = build_grid(a, wb, policy);
    const Dictionary dict = build_dictionary(grid, a, wb);

    REQUIRE(dict.matrix.cols() == static_cast<Eigen::Index>(grid.size()));
    for (Eigen::Index q = 0; q < dict.matrix.cols(); ++q)
        CHECK(dict.matrix.col(q).norm() == doctest::Approx(1.0).epsilon(1e-10));

    const CMat gram = dict.matrix.adjoint() * dict.matrix;
    double mu = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        CHECK(std::abs(gram(i, i) - 1.0) < 1e-12);
        for (Eigen::Index j = 0; j < gram.cols(); ++j)
            if (i != j) mu = std::max(mu, std::abs(gram(i, j)));
    }
    CHECK(mu < 0.5);

    CHECK_THROWS_AS(build_dictionary(grid, a, wb, /*max_elements=*/1000), std::length_error);
}

TEST_CASE("nearest-atom lookup") {
    const ArrayConfig a(33, 28e9);
    const WidebandConfig wb(64, 1.92e6, 1);
    const PolarGrid grid = build_grid(a, wb, make_ring_policy(0.1, a));

    for (std::size_t i : {std::size_t(0), grid.size() / 2, grid.size() - 1}) {
        const auto& atom = grid.atoms[i];
        CHECK(grid_nearest(grid, atom.range_m, std::acos(atom.alpha)) == i);
    }

    // midway between two same-angle rings the outer (lower index) wins
    std::size_t first = 0;
    while (grid.atoms[first + 1].angle_index != grid.atoms[first].angle_index) ++first;
    const double mid = (grid.atoms[first].range_m + grid.atoms[first + 1].range_m) / 2.0;
    CHECK(grid_nearest(grid, mid, std::acos(grid.atoms[first].alpha)) == first);

    // random queries agree with an exhaustive scan
    Rng rng(12);
    for (int it = 0; it < 100; ++it) {
        const double r = 0.2 + 5.5 * rng.uniform01();
        const double theta = 1.1 + 0.9 * rng.uniform01();
        const double alpha = std::cos(theta);
        double best = 1e300;
        std::size_t want = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double da = (grid.atoms[i].alpha - alpha) / grid.angle_pitch;
            const double drr = (grid.atoms[i].range_m - r) / grid.range_pitch_m;
            const double metric = da * da + drr * drr;
            if (metric < best - 1e-15) {
                best = metric;
                want = i;
            }
        }
        CHECK(grid_nearest(grid, r, theta) == want);
    }
}

TEST_CASE("grid csv export schema") {
    const ArrayConfig a(33, 28e9);
    const WidebandConfig wb(64, 1.92e6, 1);
    const PolarGrid grid = build_grid(a, wb, make_ring_policy(0.1, a));
    const auto path = std::filesystem::temp_directory_path() / "wnf_grid_test.csv";
    write_grid_csv(grid, path.string(), "test");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# test");
    std::getline(in, line);
    CHECK(line == "angle_index,ring_index,alpha,theta_deg,range_m");
    std::size_t rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == grid.size());
    std::filesystem::remove(path);
}
