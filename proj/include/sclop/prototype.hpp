#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sclop/lda.hpp"
#include "sclop/sclop.hpp"
#include "sclop/similarity.hpp"

namespace sclop {

/// Pairwise run-to-run scores and the selected most representative run.
struct PrototypeResult {
  std::int32_t runs = 0;
  std::vector<double> pairwise;         // R x R symmetric, diagonal fixed at 1
  std::vector<double> mean_similarity;  // row means excluding the diagonal
  std::int32_t prototype_index = 0;     // argmax, lowest index on ties
  std::string tie_note;                 // set when several runs share the maximum

  double pair_at(std::int32_t i, std::int32_t j) const { return pairwise[static_cast<std::int64_t>(i) * runs + j]; }
};

/// Means and argmax over an existing R x R pairwise matrix (diagonal entries
/// are ignored and reported as 1).
PrototypeResult prototype_from_pairwise(std::int32_t runs, const std::vector<double>& pairwise);

/// Computes all R(R-1)/2 pairwise scores of a run set and selects the run
/// with the highest mean similarity to all others. Requires R >= 2. Pairs
/// are evaluated on up to `jobs` threads with identical results for any job
/// count.
PrototypeResult mean_similarity_matrix(const RunSet& runs, const ThresholdConfig& cfg,
                                       Measure measure = Measure::modified_jaccard,
                                       std::int32_t n_top = 5, int jobs = 1);

/// Empirical cumulative distribution function of a sample.
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> samples);  // throws std::invalid_argument if empty

  double operator()(double x) const;  // share of samples <= x
  /// Smallest sample value x with F(x) >= q, for q in [0, 1].
  double quantile(double q) const;
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

/// One observation of the replication study, written as a long-format row.
struct StudyRow {
  std::int32_t set = 0;   // 0-based set index
  std::int32_t size = 0;  // subsample size the observation belongs to
  bool is_prototype = false;  // kind: prototype or raw
  double value = 0.0;         // a mean pairwise similarity
};

struct StudyResult {
  std::vector<std::int32_t> sizes;
  std::vector<StudyRow> rows;
  /// prototype_runs[size_index][set] = run index chosen within that subsample.
  std::vector<std::vector<std::int32_t>> prototype_runs;

  /// Values of one kind at one size, in row order.
  std::vector<double> samples(std::int32_t size, bool prototypes) const;
};

/// Subsample replication study. For every size s and every set: draw s runs
/// without replacement, record each drawn run's mean similarity to the rest
/// of the subsample (kind "raw"), and select the subsample's prototype. Then
/// for every size, score the selected prototypes of all sets against each
/// other and record each prototype's mean similarity to the other sets'
/// prototypes (kind "prototype").
///
/// Each size must satisfy 2 <= size <= runs of every set, and at least two
/// sets are required. Fixed seeds reproduce the result exactly, independent
/// of the job count.
StudyResult subsample_study(const std::vector<RunSet>& sets, const std::vector<std::int32_t>& sizes,
                            std::uint64_t seed, const ThresholdConfig& cfg,
                            Measure measure = Measure::modified_jaccard, std::int32_t n_top = 5,
                            int jobs = 1);

}  // namespace sclop
