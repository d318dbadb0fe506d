// SPDX-License-Identifier: Apache-2.0
#include "wnf/recovery.hpp"

#include <cmath>
#include <stdexcept>

#include "wnf/csv.hpp"

namespace wnf {
namespace {

// Selection scores for one SOMP iteration, parallel over atoms. Each score is
// accumulated sequentially within its thread so results do not depend on the
// thread count.
void atom_scores(const CMat& dict, const CMat& residual, SompAggregation agg,
                 std::vector<double>& scores) {
    const std::ptrdiff_t q = dict.cols();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < q; ++j) {
        double s = 0.0;
        for (Eigen::Index k = 0; k < residual.cols(); ++k) {
            const double mag = std::abs(dict.col(j).dot(residual.col(k)));
            s += (agg == SompAggregation::l1) ? mag : mag * mag;
        }
        scores[static_cast<std::size_t>(j)] = s;
    }
}

}  // namespace

RecoveryResult somp(const SnapshotMatrix& y, const Dictionary& dict, int sparsity,
                    SompAggregation aggregation) {
    const Eigen::Index nm = dict.matrix.rows();
    const Eigen::Index q = dict.matrix.cols();
    if (y.data.rows() != nm)
        throw std::invalid_argument("somp: snapshot rows do not match dictionary rows");
    if (sparsity < 1 || sparsity >= std::min<Eigen::Index>(q, nm))
        throw std::invalid_argument("somp: need 1 <= P < min(Q, NM)");

    RecoveryResult res;
    CMat residual = y.data;
    CMat selected(nm, sparsity);
    std::vector<double> scores(static_cast<std::size_t>(q));
    std::vector<char> used(static_cast<std::size_t>(q), 0);

    for (int it = 0; it < sparsity; ++it) {
        atom_scores(dict.matrix, residual, aggregation, scores);
        std::size_t best = static_cast<std::size_t>(q);
        double best_score = -1.0;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (used[j]) continue;
            if (scores[j] > best_score) {  // strict: ties keep the lowest index
                best_score = scores[j];
                best = j;
            }
        }
        res.support.push_back(best);
        used[best] = 1;
        selected.col(it) = dict.matrix.col(static_cast<Eigen::Index>(best));

        const auto block = selected.leftCols(it + 1);
        Eigen::ColPivHouseholderQR<CMat> qr(block);
        if (qr.rank() < it + 1)
            throw std::runtime_error("somp: selected sub-dictionary is rank deficient");
        res.coefficients = qr.solve(y.data);
        residual = y.data - block * res.coefficients;
        res.residual_norms.push_back(residual.norm());
    }
    return res;
}

EstimateSet extract_estimates(const RecoveryResult& result, const PolarGrid& grid) {
    EstimateSet out;
    for (std::size_t idx : result.support) {
        if (idx >= grid.atoms.size())
            throw std::out_of_range("extract_estimates: support index out of range");
        out.estimates.push_back({grid.atoms[idx].range_m, std::acos(grid.atoms[idx].alpha)});
    }
    return out;
}

MatchScore match_and_score(const EstimateSet& estimates, const std::vector<Target>& truth) {
    const std::size_t p = truth.size();
    if (estimates.estimates.size() != p)
        throw std::invalid_argument("match_and_score: cardinality mismatch");

    auto to_xy = [](double r, double theta) {
        return std::pair<double, double>{r * std::cos(theta), r * std::sin(theta)};
    };

    std::vector<char> est_used(p, 0), tru_used(p, 0);
    MatchScore score;
    score.squared_errors_m2.assign(p, 0.0);
    double num = 0.0, den = 0.0;
    for (std::size_t step = 0; step < p; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < p; ++i) {
            if (est_used[i]) continue;
            const auto [ex, ey] = to_xy(estimates.estimates[i].range_m, estimates.estimates[i].theta_rad);
            for (std::size_t j = 0; j < p; ++j) {
                if (tru_used[j]) continue;
                const auto [tx, ty] = to_xy(truth[j].range_m, truth[j].theta_rad);
                const double d2 = (ex - tx) * (ex - tx) + (ey - ty) * (ey - ty);
                if (d2 < best) {
                    best = d2;
                    bi = i;
                    bj = j;
                }
            }
        }
        est_used[bi] = 1;
        tru_used[bj] = 1;
        score.squared_errors_m2[bj] = best;
        num += best;
        den += truth[bj].range_m * truth[bj].range_m;
    }
    score.nmse = num / den;
    return score;
}

void write_coefficients_csv(const RecoveryResult& result, const PolarGrid& grid,
                            const std::string& path, const std::string& meta_comment) {
    std::vector<double> mean_mag(grid.atoms.size(), 0.0);
    for (std::size_t s = 0; s < result.support.size(); ++s) {
        const Eigen::Index k = result.coefficients.cols();
        double acc = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) acc += std::abs(result.coefficients(s, j));
        mean_mag[result.support[s]] = acc / static_cast<double>(k);
    }
    CsvWriter csv(path, meta_comment);
    csv.header({"atom_index", "alpha", "range_m", "mean_coeff_magnitude"});
    for (std::size_t i = 0; i < grid.atoms.size(); ++i) {
        csv.field(static_cast<long>(i));
        csv.field(grid.atoms[i].alpha);
        csv.field(grid.atoms[i].range_m);
        csv.field(mean_mag[i]);
        csv.end_row();
    }
}

}  // namespace wnf
