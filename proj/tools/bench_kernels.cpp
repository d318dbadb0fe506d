// SPDX-License-Identifier: Apache-2.0
//
// Timings of the OpenMP kernels against their serial reference
// implementations: dictionary assembly, SOMP atom scoring, MUSIC spectrum
// evaluation. Run with OMP_NUM_THREADS to vary the thread count.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "wnf/harness.hpp"
#include "wnf/serial.hpp"

using clock_type = std::chrono::steady_clock;

static double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int main() {
    const wnf::ArrayConfig array(63, 28e9);
    const wnf::WidebandConfig wb(64, 1.92e6, 100);
    const wnf::RingPolicy policy = wnf::make_ring_policy(0.1, array);
    const wnf::PolarGrid grid = wnf::build_grid(array, wb, policy);

    std::printf("threads: %d, grid atoms: %zu, NM: %d\n", omp_get_max_threads(), grid.size(),
                array.n_elements * wb.n_subcarriers);

    auto t0 = clock_type::now();
    const wnf::CMat ref_dict = wnf::serial::build_dictionary_matrix(grid, array, wb);
    const double t_dict_serial = seconds_since(t0);

    t0 = clock_type::now();
    const wnf::Dictionary dict = wnf::build_dictionary(grid, array, wb);
    const double t_dict_omp = seconds_since(t0);

    const double dict_diff = (ref_dict - dict.matrix).norm();
    std::printf("dictionary  serial %.3fs | omp %.3fs | speedup %.2fx | max-diff %.2e\n",
                t_dict_serial, t_dict_omp, t_dict_serial / t_dict_omp, dict_diff);

    const std::vector<wnf::Target> targets = {wnf::Target(2.0, wnf::kPi / 2, array)};
    const wnf::SnapshotMatrix y = wnf::synthesize_snapshots(targets, array, wb, 0.0, 42);

    t0 = clock_type::now();
    const auto ref_scores = wnf::serial::somp_scores(dict.matrix, y.data);
    const double t_score_serial = seconds_since(t0);

    t0 = clock_type::now();
    const wnf::RecoveryResult rec = wnf::somp(y, dict, 1);
    const double t_somp_omp = seconds_since(t0);
    std::printf("somp score  serial %.3fs | full somp (omp scoring) %.3fs | picked atom %zu\n",
                t_score_serial, t_somp_omp, rec.support[0]);
    (void)ref_scores;

    const wnf::NoiseSubspace un = wnf::signal_subspace_from_snapshots(y, 1);
    const wnf::SearchAxes axes = wnf::default_axes(policy.r_min_m, policy.r_max_m, 0.25, 48);

    t0 = clock_type::now();
    const wnf::RMat ref_spec = wnf::serial::music_spectrum_values(un, axes, array, wb, true);
    const double t_spec_serial = seconds_since(t0);

    t0 = clock_type::now();
    const wnf::Spectrum spec = wnf::music_spectrum_wbff(un, axes, array, wb);
    const double t_spec_omp = seconds_since(t0);

    const double spec_diff = (ref_spec - spec.values).cwiseAbs().maxCoeff();
    std::printf("wbff spec   serial %.3fs | omp %.3fs | speedup %.2fx | max-diff %.2e\n",
                t_spec_serial, t_spec_omp, t_spec_serial / t_spec_omp, spec_diff);
    return 0;
}
