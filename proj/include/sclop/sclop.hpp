#pragma once

#include <cstdint>
#include <vector>

#include "sclop/dendrogram.hpp"
#include "sclop/lda.hpp"
#include "sclop/similarity.hpp"
#include "sclop/types.hpp"

namespace sclop {

/// A pruned cluster: its members, the per-run membership counts t, and the
/// disparity U(g).
struct ClusterGroup {
  std::vector<TopicRef> members;
  std::vector<std::int64_t> t;  // length R
  double disparity = 0.0;
};

/// Result of scoring one set of runs: the optimal cluster partition, the
/// minimal disparity sum, its upper bound, and the score 1 - u_sum/u_max.
struct SclopReport {
  std::vector<ClusterGroup> groups;
  double u_sum = 0.0;
  double u_max = 0.0;
  double score = 0.0;
};

/// Disparity of a cluster with membership counts t over R runs:
///   U(g) = (1/R) * sum_r |t_r - 1| * sum_r t_r.
/// The first factor penalizes deviation from one topic per run, the second
/// penalizes size so that one large cluster never beats several exact ones.
double disparity(const std::vector<std::int64_t>& t);

/// R * U(g), an exact integer. All internal comparisons use this scaling so
/// that optimality decisions never depend on floating-point rounding.
std::int64_t scaled_disparity(const std::vector<std::int64_t>& t);

/// Per-node tables for the minimal-disparity recursion, indexed by node id.
struct DisparityTable {
  std::vector<std::vector<std::int64_t>> histogram;  // t vector per node
  std::vector<std::int64_t> scaled_u;                // R*U(node)
  std::vector<std::int64_t> min_scaled;              // R * minimal disparity sum below node
};

/// Bottom-up evaluation of the recursion
///   leaf          -> (R-1)/R
///   internal node -> min{ U(node), value(left) + value(right) },
/// on the exact R-scaled integers.
DisparityTable compute_disparities(const Dendrogram& dend, std::int32_t runs);

/// Minimal possible sum of disparities for the subtree below `node`.
double min_disparity(const Dendrogram& dend, std::int32_t runs, std::int32_t node);

/// Locally prunes the dendrogram: descending from the root, a node is
/// emitted as one final cluster exactly when its own disparity equals its
/// minimal achievable sum (so equality prefers the coarser cluster);
/// otherwise both children are visited. The emitted clusters partition the
/// leaves and attain the minimal disparity sum.
std::vector<ClusterGroup> prune(const Dendrogram& dend, std::int32_t runs);

/// Highest possible disparity sum, attained by the all-singletons partition:
///   U_max = N * (R-1) / R.
double max_disparity_sum(std::int32_t total_topics, std::int32_t runs);

/// Assembles the report for an already-built dendrogram: prune, sum the
/// group disparities, normalize.
SclopReport score_dendrogram(const Dendrogram& dend, std::int32_t runs);

/// Full pipeline over R >= 2 replicated runs: pairwise topic similarity,
/// 1 - s distances, complete linkage, local pruning, normalized score.
/// Throws std::invalid_argument when R < 2 ("R >= 2 required").
SclopReport sclop(const RunSet& runs, const ThresholdConfig& cfg,
                  Measure measure = Measure::modified_jaccard, std::int32_t n_top = 5,
                  int jobs = 1);

/// Score restricted to two runs with equal topic counts; the normalization
/// reduces to K. A function of the unordered pair: the arguments enter the
/// pipeline in a content-canonical order, so swapping them never changes the
/// result even when tied linkage distances exist.
double sclop_pairwise(const TopicCountMatrix& a, const TopicCountMatrix& b,
                      const ThresholdConfig& cfg, Measure measure = Measure::modified_jaccard,
                      std::int32_t n_top = 5);

}  // namespace sclop
