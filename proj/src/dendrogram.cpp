#include "sclop/dendrogram.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <vector>

namespace sclop {

void Dendrogram::validate() const {
  const auto n = leaf_count();
  if (n < 1) throw std::runtime_error("dendrogram: no leaves");
  if (static_cast<std::int32_t>(merges.size()) != n - 1)
    throw std::runtime_error("dendrogram: expected exactly N-1 merges");
  std::vector<char> used(static_cast<std::size_t>(node_count()), 0);
  for (std::int32_t i = 0; i < n - 1; ++i) {
    const auto& node = merges[static_cast<std::size_t>(i)];
    const auto id = n + i;
    if (node.left < 0 || node.right < 0 || node.left >= id || node.right >= id ||
        node.left == node.right)
      throw std::runtime_error("dendrogram: merge " + std::to_string(i) + " has invalid children");
    if (used[static_cast<std::size_t>(node.left)] || used[static_cast<std::size_t>(node.right)])
      throw std::runtime_error("dendrogram: node consumed twice at merge " + std::to_string(i));
    used[static_cast<std::size_t>(node.left)] = 1;
    used[static_cast<std::size_t>(node.right)] = 1;
    if (height_of(node.left) > node.height || height_of(node.right) > node.height)
      throw std::runtime_error("dendrogram: height inversion at merge " + std::to_string(i));
  }
  for (std::int32_t id = 0; id < node_count() - 1; ++id) {
    if (!used[static_cast<std::size_t>(id)])
      throw std::runtime_error("dendrogram: node " + std::to_string(id) +
                               " not reachable from the root");
  }
}

namespace {

struct PairEntry {
  double dist;
  std::int32_t a;  // a < b, creation-order cluster ids
  std::int32_t b;
};

struct PairOrder {
  bool operator()(const PairEntry& x, const PairEntry& y) const {
    // priority_queue pops the largest, so invert: smallest distance first,
    // then the lexicographically smallest id pair.
    if (x.dist != y.dist) return x.dist > y.dist;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  }
};

}  // namespace

Dendrogram complete_linkage(const std::vector<double>& dist, std::int32_t n,
                            std::vector<TopicRef> labels) {
  if (n < 2) throw std::invalid_argument("complete_linkage: at least two objects required");
  if (dist.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("complete_linkage: distance matrix size mismatch");
  if (static_cast<std::int32_t>(labels.size()) != n)
    throw std::invalid_argument("complete_linkage: one label per object required");
  for (std::int32_t i = 0; i < n; ++i) {
    if (dist[static_cast<std::size_t>(i) * n + i] != 0.0)
      throw std::invalid_argument("complete_linkage: nonzero diagonal");
    for (std::int32_t j = i + 1; j < n; ++j) {
      const double d = dist[static_cast<std::size_t>(i) * n + j];
      if (d != dist[static_cast<std::size_t>(j) * n + i])
        throw std::invalid_argument("complete_linkage: matrix not symmetric");
      if (!(d >= 0.0 && d <= 1.0))
        throw std::invalid_argument("complete_linkage: distances must lie in [0, 1]");
    }
  }

  const std::int32_t total = 2 * n - 1;
  // Distances between cluster ids, lower triangle (row > column). Distances
  // between two ids never change once both exist; merged ids just go
  // inactive, which keeps stale heap entries detectable by the active flags
  // alone.
  std::vector<std::vector<double>> d(static_cast<std::size_t>(total));
  for (std::int32_t i = 0; i < total; ++i) d[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i));
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = 0; j < i; ++j)
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          dist[static_cast<std::size_t>(i) * n + j];

  std::priority_queue<PairEntry, std::vector<PairEntry>, PairOrder> heap;
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = 0; j < i; ++j)
      heap.push({d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], j, i});

  std::vector<char> active(static_cast<std::size_t>(total), 0);
  std::fill(active.begin(), active.begin() + n, 1);

  Dendrogram dend;
  dend.leaf_labels = std::move(labels);
  dend.merges.reserve(static_cast<std::size_t>(n - 1));

  for (std::int32_t step = 0; step < n - 1; ++step) {
    PairEntry best{};
    for (;;) {
      best = heap.top();
      heap.pop();
      if (active[static_cast<std::size_t>(best.a)] && active[static_cast<std::size_t>(best.b)]) break;
    }
    const std::int32_t merged = n + step;
    active[static_cast<std::size_t>(best.a)] = 0;
    active[static_cast<std::size_t>(best.b)] = 0;
    active[static_cast<std::size_t>(merged)] = 1;
    dend.merges.push_back({best.a, best.b, best.dist});

    auto& row = d[static_cast<std::size_t>(merged)];
    for (std::int32_t other = 0; other < merged; ++other) {
      if (!active[static_cast<std::size_t>(other)]) continue;
      const auto to_a = other < best.a ? d[static_cast<std::size_t>(best.a)][static_cast<std::size_t>(other)]
                                       : d[static_cast<std::size_t>(other)][static_cast<std::size_t>(best.a)];
      const auto to_b = other < best.b ? d[static_cast<std::size_t>(best.b)][static_cast<std::size_t>(other)]
                                       : d[static_cast<std::size_t>(other)][static_cast<std::size_t>(best.b)];
      row[static_cast<std::size_t>(other)] = std::max(to_a, to_b);
      heap.push({row[static_cast<std::size_t>(other)], other, merged});
    }
  }
  return dend;
}

std::vector<std::int32_t> leaves_under(const Dendrogram& dend, std::int32_t node) {
  if (node < 0 || node >= dend.node_count())
    throw std::invalid_argument("leaves_under: node id out of range");
  std::vector<std::int32_t> leaves;
  std::vector<std::int32_t> stack{node};
  while (!stack.empty()) {
    const auto id = stack.back();
    stack.pop_back();
    if (dend.is_leaf(id)) {
      leaves.push_back(id);
    } else {
      const auto& m = dend.merge_of(id);
      stack.push_back(m.left);
      stack.push_back(m.right);
    }
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

std::vector<std::int64_t> run_histogram(const Dendrogram& dend, std::int32_t node,
                                        std::int32_t runs) {
  if (runs < 1) throw std::invalid_argument("run_histogram: runs must be >= 1");
  std::vector<std::int64_t> t(static_cast<std::size_t>(runs), 0);
  for (const auto leaf : leaves_under(dend, node)) {
    const auto r = dend.leaf_labels[static_cast<std::size_t>(leaf)].run;
    if (r < 0 || r >= runs)
      throw std::invalid_argument("run_histogram: leaf run index out of range");
    ++t[static_cast<std::size_t>(r)];
  }
  return t;
}

}  // namespace sclop
