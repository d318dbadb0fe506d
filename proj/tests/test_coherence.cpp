// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "wnf/coherence.hpp"

using namespace wnf;

namespace {

// independent quadrature oracle: composite 10-point Gauss-Legendre
double gauss10(double (*fn)(double), double a, double b) {
    static const double xs[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                 0.8650633666889845, 0.9739065285171717};
    static const double ws[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                 0.1494513491505806, 0.0666713443086881};
    const double c = (a + b) / 2.0, h = (b - a) / 2.0;
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += ws[i] * (fn(c + h * xs[i]) + fn(c - h * xs[i]));
    return s * h;
}

double cos_kernel(double t) { return std::cos(kPi / 2.0 * t * t); }
double sin_kernel(double t) { return std::sin(kPi / 2.0 * t * t); }

FresnelPair fresnel_oracle(double zeta) {
    // panel width tied to the local oscillation period
    double u = 0.0, v = 0.0, t = 0.0;
    while (t < zeta) {
        const double step = std::min(zeta - t, 0.25 / (1.0 + t));
        u += gauss10(cos_kernel, t, t + step);
        v += gauss10(sin_kernel, t, t + step);
        t += step;
    }
    return {u, v};
}

double s_freq_oracle(double dr, const WidebandConfig& wb) {
    cplx acc(0, 0);
    for (int m = 0; m < wb.n_subcarriers; ++m) {
        const double ph = m * wb.wavenumber_increment() * dr;
        acc += cplx(std::cos(ph), std::sin(ph));
    }
    return std::abs(acc) / wb.n_subcarriers;
}

double s_space_oracle(double da, int n_el) {
    const int np = (n_el - 1) / 2;
    cplx acc(0, 0);
    for (int n = -np; n <= np; ++n) {
        const double ph = kPi * n * da;
        acc += cplx(std::cos(ph), std::sin(ph));
    }
    return std::abs(acc) / n_el;
}

}  // namespace

TEST_CASE("fresnel integrals against an independent quadrature") {
    const FresnelPair zero = fresnel_integrals(0.0);
    CHECK(zero.u == 0.0);
    CHECK(zero.v == 0.0);

    const FresnelPair one = fresnel_integrals(1.0);
    CHECK(one.u == doctest::Approx(0.7799).epsilon(1e-3));
    CHECK(one.v == doctest::Approx(0.4383).epsilon(1e-3));

    for (double z : {0.1, 0.7, 1.3, 2.2, 2.39, 2.41, 3.1, 4.4, 4.6, 6.0, 9.5, 12.0}) {
        const FresnelPair lib = fresnel_integrals(z);
        const FresnelPair ref = fresnel_oracle(z);
        CHECK(std::abs(lib.u - ref.u) < 1e-7);
        CHECK(std::abs(lib.v - ref.v) < 1e-7);
    }

    CHECK(std::abs(fresnel_integrals(50.0).u - 0.5) < 0.01);
    CHECK(std::abs(fresnel_integrals(50.0).v - 0.5) < 0.01);

    // odd symmetry
    const FresnelPair pos = fresnel_integrals(1.7);
    const FresnelPair neg = fresnel_integrals(-1.7);
    CHECK(neg.u == doctest::Approx(-pos.u));
    CHECK(neg.v == doctest::Approx(-pos.v));
}

TEST_CASE("frequency correlation kernel") {
    const WidebandConfig wb(256, 480e3, 1);
    const double dr = wb.distance_resolution_m();

    CHECK(s_freq(0.0, wb) == 1.0);
    CHECK(s_freq(dr, wb) < 1e-12);       // first null
    CHECK(s_freq(7.0 * dr, wb) < 1e-12); // generic lattice null
    CHECK(s_freq(dr / 2.0, wb) == doctest::Approx(2.0 / kPi).epsilon(1e-4));

    // oracle agreement and evenness
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const double d = 30.0 * (rng.uniform01() - 0.5);
        CHECK(s_freq(d, wb) == doctest::Approx(s_freq_oracle(d, wb)).epsilon(1e-12));
        CHECK(s_freq(d, wb) == doctest::Approx(s_freq(-d, wb)));
    }

    // Dirichlet periodicity: shift by M*c/B returns the same value
    for (double d : {0.0, 0.37, 1.9, 4.2})
        CHECK(s_freq(d + wb.n_subcarriers * dr, wb) == doctest::Approx(s_freq(d, wb)).epsilon(1e-9));
}

TEST_CASE("spatial correlation kernel") {
    CHECK(s_space_linear(0.0, 127) == 1.0);
    CHECK(s_space_linear(2.0 / 127, 127) < 1e-12);  // first null
    CHECK(s_space_linear(1.0 / 127, 127) == doctest::Approx(2.0 / kPi).epsilon(1e-4));

    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        const double da = rng.uniform01() - 0.5;
        CHECK(s_space_linear(da, 127) == doctest::Approx(s_space_oracle(da, 127)).epsilon(1e-12));
    }
}

TEST_CASE("mutual coherence of steering vectors") {
    const ArrayConfig a(127, 28e9);
    const WidebandConfig wb(256, 480e3, 1);

    const SteeringVector s1 = steering_vector(20.0, 1.8, a, wb, WavefrontModel::exact, true);
    CHECK(mutual_coherence(s1, s1) == doctest::Approx(1.0));

    // adjacent angle-grid atoms at the same range sit near an array-factor null
    const double a1 = -0.5 + 61.0 / 127.0, a2 = -0.5 + 63.0 / 127.0;
    const SteeringVector g1 = steering_vector(20.0, std::acos(a1), a, wb, WavefrontModel::exact, true);
    const SteeringVector g2 = steering_vector(20.0, std::acos(a2), a, wb, WavefrontModel::exact, true);
    CHECK(mutual_coherence(g1, g2) <= 0.05);

    // same angle, one distance-resolution bin apart: frequency null
    const double dr = wb.distance_resolution_m();
    const SteeringVector g3 =
        steering_vector(20.0 + dr, std::acos(a1), a, wb, WavefrontModel::exact, true);
    CHECK(mutual_coherence(g1, g3) <= 0.05);

    const SteeringVector shorter = steering_vector(20.0, 1.8, a, WidebandConfig(8, 480e3, 1),
                                                   WavefrontModel::exact, true);
    CHECK_THROWS_AS(mutual_coherence(s1, shorter), std::invalid_argument);
    const SteeringVector unnorm = steering_vector(20.0, 1.8, a, wb, WavefrontModel::exact, false);
    CHECK_THROWS_AS(mutual_coherence(s1, unnorm), std::invalid_argument);
}

TEST_CASE("curvature coherence forms agree") {
    CHECK(curvature_coherence(0.0, 127) == 1.0);

    // reference magnitude at zeta = 6.62 is about 0.1
    CHECK(curvature_coherence_zeta(6.62, 127) == doctest::Approx(0.1).epsilon(0.1));

    Rng rng(6);
    for (int i = 0; i < 60; ++i) {
        const double x = std::pow(10.0, -5.0 + 4.0 * rng.uniform01());
        for (int n : {101, 127}) {
            CHECK(std::abs(curvature_coherence(x, n) - curvature_coherence_sum(x, n)) <= 0.02);
            CHECK(std::abs(curvature_coherence(-x, n) - curvature_coherence(x, n)) < 1e-12);
        }
    }
}

TEST_CASE("curvature coherence envelope decays") {
    const int n = 127;
    auto envelope_max = [&](double lo) {
        double m = 0.0;
        for (int i = 0; i < 400; ++i)
            m = std::max(m, curvature_coherence_zeta(lo + i / 400.0, n));
        return m;
    };
    double prev = envelope_max(5.0);
    for (double z = 7.0; z < 60.0; z *= 1.6) {
        const double cur = envelope_max(z);
        CHECK(cur <= prev + 1e-9);
        prev = cur;
    }
}

TEST_CASE("zeta threshold solve") {
    CHECK(solve_zeta(0.5, 127) == doctest::Approx(1.55).epsilon(0.05 / 1.55));
    CHECK(solve_zeta(0.1, 127) == doctest::Approx(6.62).epsilon(0.1 / 6.62));
    CHECK(solve_zeta(0.01, 127) == doctest::Approx(70.22).epsilon(1.0 / 70.22));
    CHECK_THROWS_AS(solve_zeta(0.0, 127), std::invalid_argument);
    CHECK_THROWS_AS(solve_zeta(1.0, 127), std::invalid_argument);
}

TEST_CASE("coherence factorizes into frequency and space terms") {
    const ArrayConfig arr(127, 28e9);
    const WidebandConfig wb(256, 480e3, 1);
    const auto grid_alpha = [&](int i) { return -0.5 + (2.0 * i + 1.0) / 127.0; };
    Rng rng(8);

    // same distance: S_freq = 1, total tracks the linear array factor
    for (int it = 0; it < 30; ++it) {
        const int i = static_cast<int>(rng.uniform01() * 63);
        int j = static_cast<int>(rng.uniform01() * 63);
        if (j == i) j = (j + 1) % 63;
        const double r = 2.0 + 78.0 * rng.uniform01();
        const SteeringVector f1 =
            steering_vector(r, std::acos(grid_alpha(i)), arr, wb, WavefrontModel::fresnel, true);
        const SteeringVector f2 =
            steering_vector(r, std::acos(grid_alpha(j)), arr, wb, WavefrontModel::fresnel, true);
        const double g = mutual_coherence(f1, f2);
        const double pred = s_space_linear(grid_alpha(j) - grid_alpha(i), 127);
        CHECK(std::abs(g - pred) <= 0.05);
    }

    // same angle: product of the frequency kernel and the curvature term
    for (int it = 0; it < 30; ++it) {
        const double alpha = grid_alpha(static_cast<int>(rng.uniform01() * 63));
        const double r1 = 3.0 + 50.0 * rng.uniform01();
        const double dr = (0.5 + 2.5 * rng.uniform01()) * wb.distance_resolution_m();
        const SteeringVector f1 =
            steering_vector(r1, std::acos(alpha), arr, wb, WavefrontModel::fresnel, true);
        const SteeringVector f2 =
            steering_vector(r1 + dr, std::acos(alpha), arr, wb, WavefrontModel::fresnel, true);
        const double g = mutual_coherence(f1, f2);
        const double x = arr.spacing_m * arr.spacing_m * (1.0 - alpha * alpha) /
                         arr.wavelength_m() * (1.0 / r1 - 1.0 / (r1 + dr));
        const double pred = s_freq(dr, wb) * curvature_coherence(x, 127);
        CHECK(std::abs(g - pred) <= 0.05);
    }
}
