#include "sclop/lda.hpp"

#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "sclop/rng.hpp"

namespace sclop {

void LdaConfig::validate() const {
  if (topics < 1) throw std::invalid_argument("lda: topics must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("lda: alpha must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("lda: beta must be > 0");
  if (iterations < 1) throw std::invalid_argument("lda: iterations must be >= 1");
}

void AssignmentState::check_counts(const Corpus& corpus) const {
  const auto m_count = static_cast<std::int64_t>(assignments.size());
  std::int64_t grand_total = 0;
  for (std::int64_t m = 0; m < m_count; ++m) {
    std::int64_t row = 0;
    for (std::int32_t k = 0; k < topics; ++k) row += doc_topic_at(m, k);
    if (row != static_cast<std::int64_t>(assignments[m].size()))
      throw std::runtime_error("lda state: doc-topic row " + std::to_string(m) +
                               " does not sum to the document length");
  }
  for (std::int32_t k = 0; k < topics; ++k) {
    std::int64_t col = 0;
    for (std::int32_t v = 0; v < vocab; ++v) col += topic_word_at(v, k);
    if (col != topic_totals[k])
      throw std::runtime_error("lda state: topic-word column " + std::to_string(k) +
                               " does not sum to its topic total");
    grand_total += topic_totals[k];
  }
  if (grand_total != corpus.total_tokens())
    throw std::runtime_error("lda state: topic totals do not sum to the corpus token count");
}

std::int64_t TopicCountMatrix::column_total(std::int32_t k) const {
  std::int64_t total = 0;
  for (std::int32_t v = 0; v < vocab; ++v) total += at(v, k);
  return total;
}

void RunSet::validate() const {
  if (runs.empty()) throw std::invalid_argument("run set: at least one run required");
  const auto v = runs.front().vocab;
  const auto k = runs.front().topics;
  for (const auto& run : runs) {
    if (run.vocab != v || run.topics != k)
      throw std::invalid_argument("run set: all runs must share vocabulary size and topic count");
  }
  // The vocabulary is a reference for exports; scoring works without it.
  if (!vocabulary.empty() && static_cast<std::int32_t>(vocabulary.size()) != v)
    throw std::invalid_argument("run set: vocabulary does not match the count matrices");
  if (seeds.size() != runs.size())
    throw std::invalid_argument("run set: one seed per run required");
}

AssignmentState fit_lda(const Corpus& corpus, const LdaConfig& cfg) {
  cfg.validate();
  if (corpus.documents.empty()) throw std::invalid_argument("lda: corpus has no documents");
  for (std::size_t m = 0; m < corpus.documents.size(); ++m) {
    if (corpus.documents[m].empty())
      throw std::invalid_argument("lda: document " + corpus.doc_ids[m] + " has no tokens");
  }

  const std::int32_t k_count = cfg.topics;
  const std::int32_t v_count = corpus.vocab_size();
  const auto m_count = static_cast<std::int64_t>(corpus.documents.size());

  AssignmentState state;
  state.topics = k_count;
  state.vocab = v_count;
  state.assignments.resize(corpus.documents.size());
  state.doc_topic.assign(m_count * k_count, 0);
  state.topic_word.assign(static_cast<std::int64_t>(v_count) * k_count, 0);
  state.topic_totals.assign(k_count, 0);

  SplitMix64 rng(cfg.seed);

  for (std::int64_t m = 0; m < m_count; ++m) {
    const auto& doc = corpus.documents[m];
    auto& z = state.assignments[m];
    z.resize(doc.size());
    for (std::size_t n = 0; n < doc.size(); ++n) {
      const auto k = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(k_count)));
      z[n] = k;
      const std::int32_t v0 = doc[n] - 1;
      ++state.doc_topic[m * k_count + k];
      ++state.topic_word[static_cast<std::int64_t>(v0) * k_count + k];
      ++state.topic_totals[k];
    }
  }

  const double v_beta = static_cast<double>(v_count) * cfg.beta;
  std::vector<double> cumulative(static_cast<std::size_t>(k_count));

  for (std::int32_t it = 0; it < cfg.iterations; ++it) {
    for (std::int64_t m = 0; m < m_count; ++m) {
      const auto& doc = corpus.documents[m];
      auto& z = state.assignments[m];
      std::int64_t* doc_row = state.doc_topic.data() + m * k_count;
      for (std::size_t n = 0; n < doc.size(); ++n) {
        const std::int32_t v0 = doc[n] - 1;
        std::int64_t* word_row = state.topic_word.data() + static_cast<std::int64_t>(v0) * k_count;
        const std::int32_t old_k = z[n];
        --doc_row[old_k];
        --word_row[old_k];
        --state.topic_totals[old_k];

        double total = 0.0;
        for (std::int32_t k = 0; k < k_count; ++k) {
          const double w = (static_cast<double>(word_row[k]) + cfg.beta) /
                           (static_cast<double>(state.topic_totals[k]) + v_beta) *
                           (static_cast<double>(doc_row[k]) + cfg.alpha);
          total += w;
          cumulative[static_cast<std::size_t>(k)] = total;
        }
        const double u = rng.uniform() * total;
        std::int32_t new_k = k_count - 1;
        for (std::int32_t k = 0; k < k_count; ++k) {
          if (u < cumulative[static_cast<std::size_t>(k)]) {
            new_k = k;
            break;
          }
        }

        z[n] = new_k;
        ++doc_row[new_k];
        ++word_row[new_k];
        ++state.topic_totals[new_k];
      }
    }
#ifdef NDEBUG
    if (cfg.validate_sweeps) state.check_counts(corpus);
#else
    state.check_counts(corpus);
#endif
  }
  return state;
}

TopicCountMatrix count_matrix(const AssignmentState& state) {
  TopicCountMatrix matrix;
  matrix.vocab = state.vocab;
  matrix.topics = state.topics;
  matrix.counts = state.topic_word;
  return matrix;
}

std::vector<std::uint64_t> derive_run_seeds(std::uint64_t master_seed, std::int32_t runs) {
  SplitMix64 stream(master_seed);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(runs));
  for (auto& s : seeds) s = stream.next();
  return seeds;
}

RunSet replicate(const Corpus& corpus, const LdaConfig& cfg, std::int32_t runs,
                 std::uint64_t master_seed, int jobs) {
  cfg.validate();
  if (runs < 1) throw std::invalid_argument("replicate: runs must be >= 1");

  RunSet set;
  set.vocabulary = corpus.vocabulary;
  set.config = cfg;
  set.config.seed = 0;
  set.seeds = derive_run_seeds(master_seed, runs);
  set.corpus_hash = corpus_hash_hex(corpus);
  set.runs.resize(static_cast<std::size_t>(runs));

  detail::parallel_for(runs, jobs, [&](std::int64_t r) {
    LdaConfig run_cfg = cfg;
    run_cfg.seed = set.seeds[static_cast<std::size_t>(r)];
    set.runs[static_cast<std::size_t>(r)] = count_matrix(fit_lda(corpus, run_cfg));
  });
  return set;
}

}  // namespace sclop
