// SPDX-License-Identifier: Apache-2.0
#ifndef WNF_RECOVERY_HPP
#define WNF_RECOVERY_HPP

#include "wnf/dictionary.hpp"
#include "wnf/model.hpp"

namespace wnf {

/// How per-snapshot match scores are aggregated in the SOMP selection step.
enum class SompAggregation { l1, l2 };

struct RecoveryResult {
    std::vector<std::size_t> support;   // selection order
    CMat coefficients;                  // P x K least-squares amplitudes
    std::vector<double> residual_norms; // Frobenius norm after each iteration
};

/// Simultaneous OMP: per iteration pick argmax_q sum_k |b_q^H r_k| over the
/// residual columns, re-project Y on the selected atoms by least squares,
/// update the residual. Runs exactly `sparsity` iterations; score ties break
/// to the lowest atom index.
RecoveryResult somp(const SnapshotMatrix& y, const Dictionary& dict, int sparsity,
                    SompAggregation aggregation = SompAggregation::l1);

/// Maps support indices back to physical (range, theta) pairs.
EstimateSet extract_estimates(const RecoveryResult& result, const PolarGrid& grid);

struct MatchScore {
    std::vector<double> squared_errors_m2;  // per truth target, after assignment
    double nmse;
};

/// Greedy nearest-neighbor assignment in Cartesian coordinates without
/// replacement; NMSE = sum ||p_hat - p||^2 / sum ||p||^2.
MatchScore match_and_score(const EstimateSet& estimates, const std::vector<Target>& truth);

/// CSV export: atom_index,alpha,range_m,mean_coeff_magnitude, one row per
/// atom; unselected atoms carry zero, support atoms the mean |coefficient|
/// across snapshots.
void write_coefficients_csv(const RecoveryResult& result, const PolarGrid& grid,
                            const std::string& path, const std::string& meta_comment);

}  // namespace wnf

#endif
