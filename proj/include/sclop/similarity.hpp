#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sclop/lda.hpp"
#include "sclop/types.hpp"

namespace sclop {

/// Sparse word-count vector of a single topic. Entries are (word id, count)
/// with 1-based word ids, strictly positive counts, sorted by id.
struct TopicCounts {
  std::vector<std::pair<std::int32_t, std::int64_t>> counts;
  std::int64_t total = 0;  // sum of all counts
  TopicRef origin;
};

/// Extracts topic column k of a run as sparse counts.
TopicCounts topic_counts(const TopicCountMatrix& matrix, std::int32_t k, TopicRef origin);

/// All topics of a run set in run-major order (run 0 topics first).
std::vector<TopicCounts> all_topics(const RunSet& runs);

enum class ThresholdMode { absolute, relative };

/// Word relevance cutoff for the modified Jaccard coefficient. In absolute
/// mode every topic uses the same bound c = value >= 0. In relative mode
/// value is the integer divisor d >= 1 and topic i gets c_i = n_i / d, which
/// need not be an integer. Comparisons against thresholds are strict (>).
struct ThresholdConfig {
  ThresholdMode mode = ThresholdMode::relative;
  double value = 500.0;

  void validate() const;  // throws std::invalid_argument
};

/// One threshold per topic, in input order.
std::vector<double> threshold_vector(const std::vector<TopicCounts>& topics,
                                     const ThresholdConfig& cfg);

/// Jaccard coefficient over the words assigned more often than the
/// topic-specific thresholds:
///   |{v : n_a^(v) > c_a and n_b^(v) > c_b}| / |{v : n_a^(v) > c_a or n_b^(v) > c_b}|.
/// An empty union carries no evidence of similarity: the result is 0 and
/// *degenerate is set when the caller wants to know.
double modified_jaccard(const TopicCounts& a, const TopicCounts& b, double c_a, double c_b,
                        bool* degenerate = nullptr);

/// Cosine similarity of two count vectors; throws std::runtime_error on a
/// zero vector.
double cosine(const TopicCounts& a, const TopicCounts& b);

/// Mean Jaccard coefficient of the top-n word sets for n = 1..n_top, where
/// words are ranked by descending count with ties broken by ascending word
/// id. Only words with positive counts are ranked; once a list is exhausted
/// the full list stands in for its longer prefixes.
double average_jaccard(const TopicCounts& a, const TopicCounts& b, std::int32_t n_top);

enum class Measure { modified_jaccard, cosine, average_jaccard };

std::string measure_name(Measure m);
Measure measure_from_name(const std::string& name);  // throws std::invalid_argument

/// Symmetric similarity matrix over the N = R*K topics of a run set,
/// run-major, values in [0, 1].
struct SimilarityMatrix {
  std::int32_t n = 0;
  std::vector<double> values;       // n x n row-major
  std::vector<std::string> labels;  // "r.k" per topic
  Measure measure = Measure::modified_jaccard;
  /// Topics with no word above their threshold (modified Jaccard only);
  /// every pair touching one is degenerate and scored 0.
  std::vector<std::int32_t> degenerate_topics;

  double at(std::int32_t i, std::int32_t j) const { return values[static_cast<std::int64_t>(i) * n + j]; }
};

/// Entrywise application of the selected scalar measure to every topic pair.
/// n_top only applies to Measure::average_jaccard. Pairs are evaluated on up
/// to `jobs` threads; the matrix is identical for any job count.
SimilarityMatrix pairwise_similarity(const RunSet& runs, const ThresholdConfig& cfg,
                                     Measure measure, std::int32_t n_top = 5, int jobs = 1);

/// Distances 1 - s with the diagonal forced to zero.
std::vector<double> distance_from_similarity(const SimilarityMatrix& sim);

/// Importance of word v for topic k in one run:
///   I(v,k) = (n_k^(v)/n_k) * [log(n_k^(v)/n_k + eps) - (1/K) * sum_l log(n_l^(v)/n_l + eps)].
/// Returns a V x K row-major matrix; throws std::runtime_error naming the
/// first topic with no assignments.
std::vector<double> word_importance(const TopicCountMatrix& matrix, double epsilon = 1e-5);

/// The n word ids with the highest importance for topic k, ties broken by
/// ascending word id.
std::vector<std::int32_t> top_words(const std::vector<double>& importance,
                                    std::int32_t vocab, std::int32_t topics,
                                    std::int32_t k, std::int32_t n);

}  // namespace sclop
