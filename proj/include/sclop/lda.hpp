#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sclop/corpus.hpp"

namespace sclop {

struct LdaConfig {
  std::int32_t topics = 50;
  double alpha = 1.0 / 50.0;  // document-topic Dirichlet parameter
  double beta = 1.0 / 50.0;   // topic-word Dirichlet parameter
  std::int32_t iterations = 270;
  std::uint64_t seed = 0;
  /// Re-check the count invariants after every sweep (always on in debug
  /// builds; enable explicitly in release builds for diagnostics).
  bool validate_sweeps = false;

  void validate() const;  // throws std::invalid_argument
};

/// Full sampler state after fitting: per-token topic assignments plus the
/// redundant count tables the sampler maintains.
struct AssignmentState {
  std::int32_t topics = 0;
  std::int32_t vocab = 0;
  std::vector<std::vector<std::int32_t>> assignments;  // per doc, 0-based topic ids
  std::vector<std::int64_t> doc_topic;     // M x K row-major
  std::vector<std::int64_t> topic_word;    // V x K row-major, word index 0-based
  std::vector<std::int64_t> topic_totals;  // K

  std::int64_t doc_topic_at(std::int64_t m, std::int32_t k) const { return doc_topic[m * topics + k]; }
  std::int64_t topic_word_at(std::int32_t v0, std::int32_t k) const { return topic_word[static_cast<std::int64_t>(v0) * topics + k]; }

  /// Verifies count conservation: doc-topic rows sum to document lengths,
  /// topic-word columns sum to topic totals, totals sum to the corpus token
  /// count. Throws std::runtime_error on the first violation.
  void check_counts(const Corpus& corpus) const;
};

/// Per-topic word counts of one run: dense V x K, row-major over 0-based
/// word indices (word id v maps to row v-1).
struct TopicCountMatrix {
  std::int32_t vocab = 0;
  std::int32_t topics = 0;
  std::vector<std::int64_t> counts;

  std::int64_t at(std::int32_t v0, std::int32_t k) const { return counts[static_cast<std::int64_t>(v0) * topics + k]; }
  std::int64_t& at(std::int32_t v0, std::int32_t k) { return counts[static_cast<std::int64_t>(v0) * topics + k]; }
  std::int64_t column_total(std::int32_t k) const;
};

/// R replicated fits over one corpus, all sharing vocabulary and topic count.
struct RunSet {
  std::vector<TopicCountMatrix> runs;
  std::vector<std::string> vocabulary;
  LdaConfig config;                 // parameters shared by all runs (seed field unused)
  std::vector<std::uint64_t> seeds; // per-run seeds, index-parallel to runs
  std::string corpus_hash;          // hex digest of the source corpus

  std::int32_t run_count() const { return static_cast<std::int32_t>(runs.size()); }
  std::int32_t topics_per_run() const { return runs.empty() ? 0 : runs.front().topics; }
  std::int32_t total_topics() const { return run_count() * topics_per_run(); }

  void validate() const;  // shared V and K, R >= 1
};

/// Collapsed Gibbs sampler. Initial assignments are uniform draws from the
/// seeded generator; each iteration is one full sweep over all tokens in
/// document order. The reassignment weight for topic k with the current
/// token excluded is
///   (n_k^(w) + beta) / (n_k + V*beta) * (n_m^(k) + alpha).
/// Deterministic for a fixed seed.
AssignmentState fit_lda(const Corpus& corpus, const LdaConfig& cfg);

/// Copies the V x K word-count table out of a fitted state.
TopicCountMatrix count_matrix(const AssignmentState& state);

/// R independent fits with per-run seeds taken from a SplitMix64 stream over
/// master_seed. Runs may be fitted on up to `jobs` threads; the result is
/// identical for any job count.
RunSet replicate(const Corpus& corpus, const LdaConfig& cfg, std::int32_t runs,
                 std::uint64_t master_seed, int jobs = 1);

/// The per-run seed sequence used by replicate.
std::vector<std::uint64_t> derive_run_seeds(std::uint64_t master_seed, std::int32_t runs);

}  // namespace sclop
