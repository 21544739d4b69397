#include "sclop/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace sclop {

std::string label_of(const TopicRef& ref) {
  return std::to_string(ref.run + 1) + "." + std::to_string(ref.topic + 1);
}

TopicCounts topic_counts(const TopicCountMatrix& matrix, std::int32_t k, TopicRef origin) {
  TopicCounts topic;
  topic.origin = origin;
  for (std::int32_t v0 = 0; v0 < matrix.vocab; ++v0) {
    const auto c = matrix.at(v0, k);
    if (c > 0) {
      topic.counts.emplace_back(v0 + 1, c);
      topic.total += c;
    }
  }
  return topic;
}

std::vector<TopicCounts> all_topics(const RunSet& runs) {
  runs.validate();
  std::vector<TopicCounts> topics;
  topics.reserve(static_cast<std::size_t>(runs.total_topics()));
  for (std::int32_t r = 0; r < runs.run_count(); ++r) {
    for (std::int32_t k = 0; k < runs.topics_per_run(); ++k) {
      topics.push_back(topic_counts(runs.runs[static_cast<std::size_t>(r)], k, TopicRef{r, k}));
    }
  }
  return topics;
}

void ThresholdConfig::validate() const {
  if (mode == ThresholdMode::absolute) {
    if (!(value >= 0.0)) throw std::invalid_argument("threshold: absolute bound must be >= 0");
  } else {
    if (!(value >= 1.0) || value != std::floor(value))
      throw std::invalid_argument("threshold: relative divisor must be an integer >= 1");
  }
}

std::vector<double> threshold_vector(const std::vector<TopicCounts>& topics,
                                     const ThresholdConfig& cfg) {
  cfg.validate();
  if (topics.empty()) throw std::invalid_argument("threshold: no topics given");
  std::vector<double> thresholds;
  thresholds.reserve(topics.size());
  for (const auto& topic : topics) {
    thresholds.push_back(cfg.mode == ThresholdMode::absolute
                             ? cfg.value
                             : static_cast<double>(topic.total) / cfg.value);
  }
  return thresholds;
}

double modified_jaccard(const TopicCounts& a, const TopicCounts& b, double c_a, double c_b,
                        bool* degenerate) {
  if (!(c_a >= 0.0) || !(c_b >= 0.0))
    throw std::invalid_argument("modified_jaccard: thresholds must be >= 0");
  // Zero counts never clear a nonnegative strict threshold, so walking the
  // sparse entries covers every word that can contribute.
  std::int64_t both = 0;
  std::int64_t any = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.counts.size() || j < b.counts.size()) {
    const bool take_a = j >= b.counts.size() ||
                        (i < a.counts.size() && a.counts[i].first <= b.counts[j].first);
    const bool take_b = i >= a.counts.size() ||
                        (j < b.counts.size() && b.counts[j].first <= a.counts[i].first);
    const bool above_a = take_a && static_cast<double>(a.counts[i].second) > c_a;
    const bool above_b = take_b && static_cast<double>(b.counts[j].second) > c_b;
    if (above_a || above_b) ++any;
    if (above_a && above_b) ++both;
    if (take_a) ++i;
    if (take_b) ++j;
  }
  if (degenerate != nullptr) *degenerate = any == 0;
  if (any == 0) return 0.0;
  return static_cast<double>(both) / static_cast<double>(any);
}

double cosine(const TopicCounts& a, const TopicCounts& b) {
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (const auto& [id, c] : a.counts) norm_a += static_cast<double>(c) * static_cast<double>(c);
  for (const auto& [id, c] : b.counts) norm_b += static_cast<double>(c) * static_cast<double>(c);
  if (norm_a == 0.0 || norm_b == 0.0)
    throw std::runtime_error("cosine: zero count vector for topic " +
                             label_of(norm_a == 0.0 ? a.origin : b.origin));
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.counts.size() && j < b.counts.size()) {
    if (a.counts[i].first < b.counts[j].first) {
      ++i;
    } else if (b.counts[j].first < a.counts[i].first) {
      ++j;
    } else {
      dot += static_cast<double>(a.counts[i].second) * static_cast<double>(b.counts[j].second);
      ++i;
      ++j;
    }
  }
  // One square root of the exact integer product keeps identical vectors at
  // exactly 1 (perfect squares take exact square roots).
  return std::min(1.0, dot / std::sqrt(norm_a * norm_b));
}

namespace {

// Word ids ranked by descending count, ties by ascending id.
std::vector<std::int32_t> ranked_ids(const TopicCounts& topic) {
  std::vector<std::pair<std::int32_t, std::int64_t>> entries = topic.counts;
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  std::vector<std::int32_t> ids;
  ids.reserve(entries.size());
  for (const auto& [id, c] : entries) ids.push_back(id);
  return ids;
}

}  // namespace

double average_jaccard(const TopicCounts& a, const TopicCounts& b, std::int32_t n_top) {
  if (n_top < 1) throw std::invalid_argument("average_jaccard: n_top must be >= 1");
  const auto ranked_a = ranked_ids(a);
  const auto ranked_b = ranked_ids(b);
  std::vector<bool> in_a;
  std::vector<bool> in_b;
  double sum = 0.0;
  for (std::int32_t n = 1; n <= n_top; ++n) {
    const auto take_a = std::min<std::size_t>(ranked_a.size(), static_cast<std::size_t>(n));
    const auto take_b = std::min<std::size_t>(ranked_b.size(), static_cast<std::size_t>(n));
    std::int64_t inter = 0;
    for (std::size_t i = 0; i < take_a; ++i) {
      for (std::size_t j = 0; j < take_b; ++j) {
        if (ranked_a[i] == ranked_b[j]) {
          ++inter;
          break;
        }
      }
    }
    const auto uni = static_cast<std::int64_t>(take_a + take_b) - inter;
    if (uni > 0) sum += static_cast<double>(inter) / static_cast<double>(uni);
  }
  return sum / static_cast<double>(n_top);
}

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::modified_jaccard:
      return "modified-jaccard";
    case Measure::cosine:
      return "cosine";
    case Measure::average_jaccard:
      return "average-jaccard";
  }
  return "unknown";
}

Measure measure_from_name(const std::string& name) {
  if (name == "modified-jaccard" || name == "modified_jaccard") return Measure::modified_jaccard;
  if (name == "cosine") return Measure::cosine;
  if (name == "average-jaccard" || name == "average_jaccard") return Measure::average_jaccard;
  throw std::invalid_argument("unknown similarity measure: " + name);
}

SimilarityMatrix pairwise_similarity(const RunSet& runs, const ThresholdConfig& cfg,
                                     Measure measure, std::int32_t n_top, int jobs) {
  const auto topics = all_topics(runs);
  const auto n = static_cast<std::int32_t>(topics.size());

  SimilarityMatrix matrix;
  matrix.n = n;
  matrix.measure = measure;
  matrix.values.assign(static_cast<std::int64_t>(n) * n, 0.0);
  matrix.labels.reserve(static_cast<std::size_t>(n));
  for (const auto& topic : topics) matrix.labels.push_back(label_of(topic.origin));

  std::vector<double> thresholds;
  if (measure == Measure::modified_jaccard) {
    thresholds = threshold_vector(topics, cfg);
    for (std::int32_t i = 0; i < n; ++i) {
      const auto& entries = topics[static_cast<std::size_t>(i)].counts;
      const bool any_above =
          std::any_of(entries.begin(), entries.end(), [&](const auto& e) {
            return static_cast<double>(e.second) > thresholds[static_cast<std::size_t>(i)];
          });
      if (!any_above) matrix.degenerate_topics.push_back(i);
    }
  }

  detail::parallel_for(n, jobs, [&](std::int64_t i) {
    for (std::int32_t j = static_cast<std::int32_t>(i); j < n; ++j) {
      const auto& a = topics[static_cast<std::size_t>(i)];
      const auto& b = topics[static_cast<std::size_t>(j)];
      double s = 0.0;
      switch (measure) {
        case Measure::modified_jaccard:
          s = modified_jaccard(a, b, thresholds[static_cast<std::size_t>(i)],
                               thresholds[static_cast<std::size_t>(j)]);
          break;
        case Measure::cosine:
          s = cosine(a, b);
          break;
        case Measure::average_jaccard:
          s = average_jaccard(a, b, n_top);
          break;
      }
      matrix.values[i * n + j] = s;
      matrix.values[static_cast<std::int64_t>(j) * n + i] = s;
    }
  });
  return matrix;
}

std::vector<double> distance_from_similarity(const SimilarityMatrix& sim) {
  std::vector<double> dist(sim.values.size());
  for (std::int32_t i = 0; i < sim.n; ++i) {
    for (std::int32_t j = 0; j < sim.n; ++j) {
      dist[static_cast<std::int64_t>(i) * sim.n + j] = i == j ? 0.0 : 1.0 - sim.at(i, j);
    }
  }
  return dist;
}

std::vector<double> word_importance(const TopicCountMatrix& matrix, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("word_importance: epsilon must be > 0");
  const auto v_count = matrix.vocab;
  const auto k_count = matrix.topics;
  std::vector<double> totals(static_cast<std::size_t>(k_count));
  for (std::int32_t k = 0; k < k_count; ++k) {
    const auto t = matrix.column_total(k);
    if (t == 0)
      throw std::runtime_error("word_importance: topic " + std::to_string(k + 1) +
                               " has no assignments");
    totals[static_cast<std::size_t>(k)] = static_cast<double>(t);
  }

  std::vector<double> importance(static_cast<std::int64_t>(v_count) * k_count);
  std::vector<double> log_share(static_cast<std::size_t>(k_count));
  for (std::int32_t v0 = 0; v0 < v_count; ++v0) {
    double mean_log = 0.0;
    for (std::int32_t k = 0; k < k_count; ++k) {
      const double share = static_cast<double>(matrix.at(v0, k)) / totals[static_cast<std::size_t>(k)];
      log_share[static_cast<std::size_t>(k)] = std::log(share + epsilon);
      mean_log += log_share[static_cast<std::size_t>(k)];
    }
    mean_log /= static_cast<double>(k_count);
    for (std::int32_t k = 0; k < k_count; ++k) {
      const double share = static_cast<double>(matrix.at(v0, k)) / totals[static_cast<std::size_t>(k)];
      importance[static_cast<std::int64_t>(v0) * k_count + k] =
          share * (log_share[static_cast<std::size_t>(k)] - mean_log);
    }
  }
  return importance;
}

std::vector<std::int32_t> top_words(const std::vector<double>& importance, std::int32_t vocab,
                                    std::int32_t topics, std::int32_t k, std::int32_t n) {
  if (k < 0 || k >= topics) throw std::invalid_argument("top_words: topic index out of range");
  if (n < 1) throw std::invalid_argument("top_words: n must be >= 1");
  std::vector<std::int32_t> ids(static_cast<std::size_t>(vocab));
  for (std::int32_t v0 = 0; v0 < vocab; ++v0) ids[static_cast<std::size_t>(v0)] = v0 + 1;
  std::sort(ids.begin(), ids.end(), [&](std::int32_t x, std::int32_t y) {
    const double ix = importance[static_cast<std::int64_t>(x - 1) * topics + k];
    const double iy = importance[static_cast<std::int64_t>(y - 1) * topics + k];
    if (ix != iy) return ix > iy;
    return x < y;
  });
  ids.resize(std::min<std::size_t>(ids.size(), static_cast<std::size_t>(n)));
  return ids;
}

}  // namespace sclop
