// SPDX-License-Identifier: Apache-2.0
#ifndef WNF_SERIAL_HPP
#define WNF_SERIAL_HPP

#include "wnf/dictionary.hpp"
#include "wnf/subspace.hpp"

namespace wnf::serial {

// Single-threaded reference implementations of the OpenMP kernels. Kept
// deliberately plain (no Eigen expression fusion, no pragmas) so the parallel
// paths can be checked against an independently written loop nest.

CMat build_dictionary_matrix(const PolarGrid& grid, const ArrayConfig& array,
                             const WidebandConfig& wb);

/// Per-atom SOMP selection scores sum_k |b_q^H r_k|.
std::vector<double> somp_scores(const CMat& dict, const CMat& residual);

RMat music_spectrum_values(const NoiseSubspace& un, const SearchAxes& axes,
                           const ArrayConfig& array, const WidebandConfig& wb, bool planar);

}  // namespace wnf::serial

#endif
