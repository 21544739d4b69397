#include <doctest.h>

#include <algorithm>

#include "sclop/corpus.hpp"
#include "sclop/lda.hpp"
#include "sclop/rng.hpp"

using namespace sclop;

namespace {

Corpus tiny_corpus() {
  Corpus corpus;
  corpus.vocabulary = {"a", "b", "c"};
  corpus.doc_ids = {"d1", "d2"};
  corpus.documents = {{1, 2, 1, 3}, {2, 2, 3}};
  return corpus;
}

Corpus separable_corpus() {
  Corpus corpus;
  corpus.vocabulary = {"a", "b"};
  corpus.doc_ids = {"d1", "d2"};
  corpus.documents = {{1, 1, 1}, {2, 2, 2}};
  return corpus;
}

LdaConfig small_config(std::int32_t topics, std::uint64_t seed, std::int32_t iterations = 20) {
  LdaConfig cfg;
  cfg.topics = topics;
  cfg.alpha = 1.0 / topics;
  cfg.beta = 1.0 / topics;
  cfg.iterations = iterations;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("a single topic absorbs every token") {
  const auto corpus = tiny_corpus();
  const auto state = fit_lda(corpus, small_config(1, 42));
  CHECK(state.topic_totals == std::vector<std::int64_t>{corpus.total_tokens()});
  for (const auto& doc : state.assignments)
    for (const auto z : doc) CHECK(z == 0);
}

TEST_CASE("identical seeds produce identical states") {
  const auto corpus = tiny_corpus();
  const auto a = fit_lda(corpus, small_config(3, 99));
  const auto b = fit_lda(corpus, small_config(3, 99));
  CHECK(a.assignments == b.assignments);
  CHECK(a.doc_topic == b.doc_topic);
  CHECK(a.topic_word == b.topic_word);
  CHECK(a.topic_totals == b.topic_totals);
}

TEST_CASE("different seeds usually differ") {
  const auto corpus = tiny_corpus();
  const auto a = fit_lda(corpus, small_config(3, 1));
  const auto b = fit_lda(corpus, small_config(3, 2));
  CHECK(a.assignments != b.assignments);  // 7 tokens over 3 topics; collision is implausible
}

TEST_CASE("configuration errors are rejected") {
  const auto corpus = tiny_corpus();
  auto cfg = small_config(0, 1);
  CHECK_THROWS_AS(fit_lda(corpus, cfg), std::invalid_argument);
  cfg = small_config(2, 1);
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(fit_lda(corpus, cfg), std::invalid_argument);
  cfg = small_config(2, 1);
  cfg.beta = -1.0;
  CHECK_THROWS_AS(fit_lda(corpus, cfg), std::invalid_argument);
  cfg = small_config(2, 1);
  cfg.iterations = 0;
  CHECK_THROWS_AS(fit_lda(corpus, cfg), std::invalid_argument);
}

TEST_CASE("empty corpora and empty documents are rejected") {
  Corpus corpus;
  CHECK_THROWS_AS(fit_lda(corpus, small_config(2, 1)), std::invalid_argument);
  corpus.vocabulary = {"a"};
  corpus.doc_ids = {"d1"};
  corpus.documents = {{}};
  CHECK_THROWS_WITH_AS(fit_lda(corpus, small_config(2, 1)), doctest::Contains("d1"),
                       std::invalid_argument);
}

TEST_CASE("count matrix mirrors the state and sums per column") {
  Corpus corpus;
  corpus.vocabulary = {"a"};
  corpus.doc_ids = {"d1"};
  corpus.documents = {{1, 1, 1, 1, 1}};
  const auto state = fit_lda(corpus, small_config(1, 5));
  const auto matrix = count_matrix(state);
  REQUIRE(matrix.vocab == 1);
  REQUIRE(matrix.topics == 1);
  CHECK(matrix.at(0, 0) == 5);
  CHECK(matrix.column_total(0) == 5);
}

TEST_CASE("an unused topic yields an all-zero column") {
  TopicCountMatrix matrix;
  matrix.vocab = 2;
  matrix.topics = 2;
  matrix.counts = {3, 0, 4, 0};
  CHECK(matrix.column_total(1) == 0);
}

TEST_CASE("count invariants hold after every sweep") {
  auto cfg = small_config(4, 123, 10);
  cfg.validate_sweeps = true;
  const auto corpus = tiny_corpus();
  const auto state = fit_lda(corpus, cfg);  // check_counts throws on violation
  CHECK_NOTHROW(state.check_counts(corpus));
}

TEST_CASE("replicate with one run equals a direct fit with the derived seed") {
  const auto corpus = tiny_corpus();
  const auto cfg = small_config(2, 0);
  const auto set = replicate(corpus, cfg, 1, 77);
  const auto seeds = derive_run_seeds(77, 1);
  auto direct_cfg = cfg;
  direct_cfg.seed = seeds[0];
  const auto direct = count_matrix(fit_lda(corpus, direct_cfg));
  CHECK(set.runs[0].counts == direct.counts);
  CHECK(set.seeds == seeds);
}

TEST_CASE("replicate is deterministic and job-count independent") {
  const auto corpus = tiny_corpus();
  const auto cfg = small_config(2, 0);
  const auto a = replicate(corpus, cfg, 4, 2024, 1);
  const auto b = replicate(corpus, cfg, 4, 2024, 3);
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t r = 0; r < a.runs.size(); ++r) CHECK(a.runs[r].counts == b.runs[r].counts);
  CHECK(a.seeds == b.seeds);
  CHECK(a.corpus_hash == b.corpus_hash);
}

TEST_CASE("replication count fixes the total topic count") {
  const auto corpus = tiny_corpus();
  const auto set = replicate(corpus, small_config(5, 0, 3), 4, 9);
  CHECK(set.total_topics() == 20);
  CHECK_THROWS_AS(replicate(corpus, small_config(2, 0), 0, 1), std::invalid_argument);
}

TEST_CASE("runs depend only on their own seed, not on their position") {
  const auto corpus = tiny_corpus();
  const auto cfg = small_config(2, 0);
  const auto set = replicate(corpus, cfg, 3, 31);
  for (std::size_t r = 0; r < set.runs.size(); ++r) {
    auto one = cfg;
    one.seed = set.seeds[r];
    CHECK(count_matrix(fit_lda(corpus, one)).counts == set.runs[r].counts);
  }
}

TEST_CASE("a separable two-document corpus concentrates") {
  const auto corpus = separable_corpus();
  int concentrated = 0;
  const int trials = 10;
  for (int seed = 0; seed < trials; ++seed) {
    auto cfg = small_config(2, static_cast<std::uint64_t>(seed), 200);
    cfg.alpha = 0.02;
    cfg.beta = 0.02;
    const auto state = fit_lda(corpus, cfg);
    bool both = true;
    for (std::int64_t m = 0; m < 2; ++m) {
      std::int64_t best = std::max(state.doc_topic_at(m, 0), state.doc_topic_at(m, 1));
      if (static_cast<double>(best) / 3.0 <= 0.9) both = false;
    }
    if (both) ++concentrated;
  }
  CHECK(concentrated >= trials * 9 / 10);  // full 50-seed version runs in the acceptance suite
}
