#include <doctest.h>

#include <algorithm>

#include "sclop/prototype.hpp"
#include "sclop/rng.hpp"
#include "sclop/synth.hpp"

using namespace sclop;

namespace {

RunSet identical_runs(std::int32_t count) {
  TopicCountMatrix matrix;
  matrix.vocab = 4;
  matrix.topics = 2;
  matrix.counts = {9, 0, 8, 0, 0, 9, 0, 8};
  RunSet runs;
  for (std::int32_t r = 0; r < count; ++r) {
    runs.runs.push_back(matrix);
    runs.seeds.push_back(0);
  }
  return runs;
}

const ThresholdConfig kZeroThreshold{ThresholdMode::absolute, 0.0};

std::vector<RunSet> small_replicated_sets(std::int32_t sets, std::int32_t runs_per_set,
                                          std::uint64_t seed) {
  // Deliberately unstable fits (noisy corpus, mismatched K, few sweeps) so
  // the pairwise scores actually vary across runs.
  SyntheticSpec spec;
  spec.true_topics = 3;
  spec.vocab_size = 45;
  spec.docs = 24;
  spec.doc_length = 20;
  spec.topic_concentration = 8.0;
  spec.noise_rate = 0.5;
  spec.seed = 17;
  const auto corpus = synthesize_corpus(spec);

  LdaConfig cfg;
  cfg.topics = 4;
  cfg.alpha = 0.25;
  cfg.beta = 0.25;
  cfg.iterations = 8;

  SplitMix64 stream(seed);
  std::vector<RunSet> sets_out;
  for (std::int32_t s = 0; s < sets; ++s)
    sets_out.push_back(replicate(corpus, cfg, runs_per_set, stream.next(), 2));
  return sets_out;
}

}  // namespace

TEST_CASE("means and argmax over a given pairwise matrix") {
  // pairwise (s12, s13, s23) = (0.9, 0.9, 0.5)
  const std::vector<double> pairwise = {1.0, 0.9, 0.9, 0.9, 1.0, 0.5, 0.9, 0.5, 1.0};
  const auto result = prototype_from_pairwise(3, pairwise);
  CHECK(result.mean_similarity[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(result.mean_similarity[1] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(result.mean_similarity[2] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(result.prototype_index == 0);
  CHECK(result.tie_note.empty());
}

TEST_CASE("two runs tie and the first wins") {
  const std::vector<double> pairwise = {1.0, 0.8, 0.8, 1.0};
  const auto result = prototype_from_pairwise(2, pairwise);
  CHECK(result.mean_similarity[0] == result.mean_similarity[1]);
  CHECK(result.prototype_index == 0);
  CHECK_FALSE(result.tie_note.empty());
}

TEST_CASE("identical runs are all perfect prototypes") {
  const auto runs = identical_runs(3);
  const auto result = mean_similarity_matrix(runs, kZeroThreshold);
  for (const auto mean : result.mean_similarity) CHECK(mean == 1.0);
  CHECK(result.prototype_index == 0);
}

TEST_CASE("prototype selection rejects a single run") {
  CHECK_THROWS_AS(mean_similarity_matrix(identical_runs(1), kZeroThreshold),
                  std::invalid_argument);
  CHECK_THROWS_AS(prototype_from_pairwise(1, {1.0}), std::invalid_argument);
}

TEST_CASE("argmax dominance holds on random pairwise matrices") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto runs = static_cast<std::int32_t>(2 + rng.below(7));
    std::vector<double> pairwise(static_cast<std::size_t>(runs) * runs, 1.0);
    for (std::int32_t i = 0; i < runs; ++i) {
      for (std::int32_t j = i + 1; j < runs; ++j) {
        const double s = rng.uniform();
        pairwise[static_cast<std::size_t>(i) * runs + j] = s;
        pairwise[static_cast<std::size_t>(j) * runs + i] = s;
      }
    }
    const auto result = prototype_from_pairwise(runs, pairwise);
    for (const auto mean : result.mean_similarity)
      CHECK(result.mean_similarity[static_cast<std::size_t>(result.prototype_index)] >= mean);
    // symmetric input stays symmetric in the result
    for (std::int32_t i = 0; i < runs; ++i)
      for (std::int32_t j = 0; j < runs; ++j)
        CHECK(result.pair_at(i, j) == result.pair_at(j, i));
  }
}

TEST_CASE("ecdf is a nondecreasing step function with order-statistic quantiles") {
  Ecdf ecdf({0.4, 0.1, 0.9, 0.4});
  CHECK(ecdf(0.0) == 0.0);
  CHECK(ecdf(0.1) == 0.25);
  CHECK(ecdf(0.4) == 0.75);
  CHECK(ecdf(1.0) == 1.0);
  CHECK(ecdf.quantile(0.0) == 0.1);
  CHECK(ecdf.quantile(0.5) == 0.4);
  CHECK(ecdf.quantile(1.0) == 0.9);

  double last = 0.0;
  for (double x = 0.0; x <= 1.0; x += 0.01) {
    const double f = ecdf(x);
    CHECK(f >= last);
    last = f;
  }
  CHECK_THROWS_AS(Ecdf({}), std::invalid_argument);
}

TEST_CASE("study validates its inputs") {
  const auto sets = small_replicated_sets(2, 3, 1);
  CHECK_THROWS_AS(subsample_study({sets[0]}, {2}, 0, kZeroThreshold), std::invalid_argument);
  CHECK_THROWS_AS(subsample_study(sets, {}, 0, kZeroThreshold), std::invalid_argument);
  CHECK_THROWS_AS(subsample_study(sets, {1}, 0, kZeroThreshold), std::invalid_argument);
  CHECK_THROWS_AS(subsample_study(sets, {4}, 0, kZeroThreshold), std::invalid_argument);
}

TEST_CASE("a full-size subsample reduces to the per-set selection") {
  const ThresholdConfig cfg{ThresholdMode::relative, 50.0};
  const auto sets = small_replicated_sets(3, 4, 7);
  const auto study = subsample_study(sets, {4}, 123, cfg);

  for (std::size_t s = 0; s < sets.size(); ++s) {
    const auto direct = mean_similarity_matrix(sets[s], cfg);
    CHECK(study.prototype_runs[0][s] == direct.prototype_index);
    // raw values at the full size are exactly the per-run means
    std::vector<double> raw;
    for (const auto& row : study.rows) {
      if (!row.is_prototype && row.set == static_cast<std::int32_t>(s)) raw.push_back(row.value);
    }
    REQUIRE(raw.size() == direct.mean_similarity.size());
    for (std::size_t r = 0; r < raw.size(); ++r)
      CHECK(raw[r] == doctest::Approx(direct.mean_similarity[r]).epsilon(1e-12));
  }
}

TEST_CASE("study rows cover every kind and size, deterministically") {
  const ThresholdConfig cfg{ThresholdMode::relative, 50.0};
  const auto sets = small_replicated_sets(3, 4, 21);
  const std::vector<std::int32_t> sizes = {2, 4};
  const auto a = subsample_study(sets, sizes, 99, cfg);
  const auto b = subsample_study(sets, sizes, 99, cfg, Measure::modified_jaccard, 5, 2);

  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].set == b.rows[i].set);
    CHECK(a.rows[i].size == b.rows[i].size);
    CHECK(a.rows[i].is_prototype == b.rows[i].is_prototype);
    CHECK(a.rows[i].value == b.rows[i].value);
  }

  // 3 sets * (2 raw + 1 prototype) at size 2, 3 sets * (4 raw + 1 prototype) at size 4
  CHECK(a.samples(2, false).size() == 6);
  CHECK(a.samples(2, true).size() == 3);
  CHECK(a.samples(4, false).size() == 12);
  CHECK(a.samples(4, true).size() == 3);

  // Another seed eventually draws different subsamples.
  bool any_difference = false;
  for (std::uint64_t seed = 100; seed < 110 && !any_difference; ++seed) {
    const auto different = subsample_study(sets, sizes, seed, cfg);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      if (a.rows[i].value != different.rows[i].value) any_difference = true;
    }
  }
  CHECK(any_difference);
}
