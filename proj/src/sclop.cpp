#include "sclop/sclop.hpp"

#include <cstdlib>
#include <stdexcept>

namespace sclop {

std::int64_t scaled_disparity(const std::vector<std::int64_t>& t) {
  std::int64_t deviation = 0;
  std::int64_t members = 0;
  for (const auto count : t) {
    deviation += std::llabs(count - 1);
    members += count;
  }
  return deviation * members;
}

double disparity(const std::vector<std::int64_t>& t) {
  if (t.empty()) throw std::invalid_argument("disparity: empty run histogram");
  return static_cast<double>(scaled_disparity(t)) / static_cast<double>(t.size());
}

DisparityTable compute_disparities(const Dendrogram& dend, std::int32_t runs) {
  if (runs < 1) throw std::invalid_argument("compute_disparities: runs must be >= 1");
  const auto n = dend.leaf_count();
  const auto total = dend.node_count();

  DisparityTable table;
  table.histogram.resize(static_cast<std::size_t>(total));
  table.scaled_u.resize(static_cast<std::size_t>(total));
  table.min_scaled.resize(static_cast<std::size_t>(total));

  for (std::int32_t leaf = 0; leaf < n; ++leaf) {
    const auto r = dend.leaf_labels[static_cast<std::size_t>(leaf)].run;
    if (r < 0 || r >= runs)
      throw std::invalid_argument("compute_disparities: leaf run index out of range");
    auto& t = table.histogram[static_cast<std::size_t>(leaf)];
    t.assign(static_cast<std::size_t>(runs), 0);
    t[static_cast<std::size_t>(r)] = 1;
    // A singleton's disparity is (R-1)/R, which is also its minimum.
    table.scaled_u[static_cast<std::size_t>(leaf)] = runs - 1;
    table.min_scaled[static_cast<std::size_t>(leaf)] = runs - 1;
  }

  // Children precede parents in id order, so one forward pass suffices.
  for (std::int32_t id = n; id < total; ++id) {
    const auto& m = dend.merge_of(id);
    const auto& left = table.histogram[static_cast<std::size_t>(m.left)];
    const auto& right = table.histogram[static_cast<std::size_t>(m.right)];
    auto& t = table.histogram[static_cast<std::size_t>(id)];
    t.resize(static_cast<std::size_t>(runs));
    for (std::int32_t r = 0; r < runs; ++r)
      t[static_cast<std::size_t>(r)] = left[static_cast<std::size_t>(r)] + right[static_cast<std::size_t>(r)];
    table.scaled_u[static_cast<std::size_t>(id)] = scaled_disparity(t);
    const auto split = table.min_scaled[static_cast<std::size_t>(m.left)] +
                       table.min_scaled[static_cast<std::size_t>(m.right)];
    table.min_scaled[static_cast<std::size_t>(id)] =
        std::min(table.scaled_u[static_cast<std::size_t>(id)], split);
  }
  return table;
}

double min_disparity(const Dendrogram& dend, std::int32_t runs, std::int32_t node) {
  if (node < 0 || node >= dend.node_count())
    throw std::invalid_argument("min_disparity: node id out of range");
  const auto table = compute_disparities(dend, runs);
  return static_cast<double>(table.min_scaled[static_cast<std::size_t>(node)]) /
         static_cast<double>(runs);
}

namespace {

std::vector<ClusterGroup> prune_with_table(const Dendrogram& dend, std::int32_t runs,
                                           const DisparityTable& table) {
  std::vector<ClusterGroup> groups;
  std::vector<std::int32_t> stack{dend.root()};
  while (!stack.empty()) {
    const auto id = stack.back();
    stack.pop_back();
    // Emitting requires the node's own disparity to already be optimal;
    // equality (including at every leaf) keeps the coarser cluster.
    if (table.scaled_u[static_cast<std::size_t>(id)] ==
        table.min_scaled[static_cast<std::size_t>(id)]) {
      ClusterGroup group;
      for (const auto leaf : leaves_under(dend, id))
        group.members.push_back(dend.leaf_labels[static_cast<std::size_t>(leaf)]);
      group.t = table.histogram[static_cast<std::size_t>(id)];
      group.disparity =
          static_cast<double>(table.scaled_u[static_cast<std::size_t>(id)]) / runs;
      groups.push_back(std::move(group));
    } else {
      const auto& m = dend.merge_of(id);
      // Right first so the left subtree is visited first (leaf order).
      stack.push_back(m.right);
      stack.push_back(m.left);
    }
  }
  return groups;
}

}  // namespace

std::vector<ClusterGroup> prune(const Dendrogram& dend, std::int32_t runs) {
  return prune_with_table(dend, runs, compute_disparities(dend, runs));
}

double max_disparity_sum(std::int32_t total_topics, std::int32_t runs) {
  return static_cast<double>(total_topics) * static_cast<double>(runs - 1) /
         static_cast<double>(runs);
}

SclopReport score_dendrogram(const Dendrogram& dend, std::int32_t runs) {
  if (runs < 2) throw std::invalid_argument("sclop: R >= 2 required");
  const auto table = compute_disparities(dend, runs);

  SclopReport report;
  report.groups = prune_with_table(dend, runs, table);

  std::int64_t sum_scaled = 0;
  std::size_t covered = 0;
  for (const auto& group : report.groups) {
    sum_scaled += scaled_disparity(group.t);
    covered += group.members.size();
  }
  if (covered != static_cast<std::size_t>(dend.leaf_count()))
    throw std::runtime_error("sclop: pruned groups do not partition the topics");
  if (sum_scaled != table.min_scaled[static_cast<std::size_t>(dend.root())])
    throw std::runtime_error("sclop: pruned disparity sum does not match the recursion optimum");

  const std::int64_t max_scaled =
      static_cast<std::int64_t>(dend.leaf_count()) * (runs - 1);
  report.u_sum = static_cast<double>(sum_scaled) / runs;
  report.u_max = max_disparity_sum(dend.leaf_count(), runs);
  report.score = 1.0 - static_cast<double>(sum_scaled) / static_cast<double>(max_scaled);
  return report;
}

SclopReport sclop(const RunSet& runs, const ThresholdConfig& cfg, Measure measure,
                  std::int32_t n_top, int jobs) {
  runs.validate();
  if (runs.run_count() < 2) throw std::invalid_argument("sclop: R >= 2 required");
  const auto sim = pairwise_similarity(runs, cfg, measure, n_top, jobs);
  const auto dist = distance_from_similarity(sim);
  std::vector<TopicRef> labels;
  labels.reserve(static_cast<std::size_t>(sim.n));
  for (std::int32_t r = 0; r < runs.run_count(); ++r)
    for (std::int32_t k = 0; k < runs.topics_per_run(); ++k) labels.push_back(TopicRef{r, k});
  const auto dend = complete_linkage(dist, sim.n, std::move(labels));
  return score_dendrogram(dend, runs.run_count());
}

double sclop_pairwise(const TopicCountMatrix& a, const TopicCountMatrix& b,
                      const ThresholdConfig& cfg, Measure measure, std::int32_t n_top) {
  if (a.topics != b.topics)
    throw std::invalid_argument("sclop_pairwise: both runs must have the same topic count");
  if (a.vocab != b.vocab)
    throw std::invalid_argument("sclop_pairwise: both runs must share a vocabulary");
  // The score belongs to the unordered pair, but tied linkage distances
  // resolve by cluster index, so the runs enter in a content-canonical order
  // to keep sclop_pairwise(a, b) == sclop_pairwise(b, a) exactly.
  const bool swap = b.counts < a.counts;
  RunSet pair;
  pair.runs = {swap ? b : a, swap ? a : b};
  pair.seeds = {0, 0};
  return sclop(pair, cfg, measure, n_top, 1).score;
}

}  // namespace sclop
