#pragma once

#include <cstdint>
#include <vector>

#include "sclop/types.hpp"

namespace sclop {

/// One agglomeration step. Node ids: leaves are 0..N-1, the i-th merge
/// creates node N+i, so children always have smaller ids than their parent.
struct DendrogramNode {
  std::int32_t left = -1;   // smaller child id
  std::int32_t right = -1;  // larger child id
  double height = 0.0;      // complete-linkage distance of the merge
};

/// Binary merge tree over N labeled leaves with N-1 internal nodes and
/// nondecreasing heights from leaves to root along every path.
struct Dendrogram {
  std::vector<TopicRef> leaf_labels;   // N
  std::vector<DendrogramNode> merges;  // N-1, creation order

  std::int32_t leaf_count() const { return static_cast<std::int32_t>(leaf_labels.size()); }
  std::int32_t node_count() const { return 2 * leaf_count() - 1; }
  std::int32_t root() const { return node_count() - 1; }
  bool is_leaf(std::int32_t node) const { return node < leaf_count(); }
  const DendrogramNode& merge_of(std::int32_t node) const { return merges[node - leaf_count()]; }
  double height_of(std::int32_t node) const { return is_leaf(node) ? 0.0 : merge_of(node).height; }

  void validate() const;  // structural invariants, throws std::runtime_error
};

/// Agglomerative clustering with complete linkage: repeatedly merges the two
/// clusters whose maximum pairwise distance is minimal, at that distance.
/// Ties are broken by the lexicographically smallest (i, j) pair of cluster
/// creation ids, so results are identical across platforms.
///
/// dist is a row-major n x n matrix; it must be symmetric with a zero
/// diagonal and entries in [0, 1]. Requires n >= 2. Runs in O(n^2 log n)
/// time via a lazy pair heap.
Dendrogram complete_linkage(const std::vector<double>& dist, std::int32_t n,
                            std::vector<TopicRef> labels);

/// Leaf ids under a node, in ascending order.
std::vector<std::int32_t> leaves_under(const Dendrogram& dend, std::int32_t node);

/// t vector of a node: t[r] = number of leaves under it that originate from
/// run r. Sums to the node's leaf count.
std::vector<std::int64_t> run_histogram(const Dendrogram& dend, std::int32_t node,
                                        std::int32_t runs);

}  // namespace sclop
