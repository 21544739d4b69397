// Acceptance suite: every check prints one PASS/FAIL line; the process exits
// with the number of failed checks.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sclop/corpus.hpp"
#include "sclop/lda.hpp"
#include "sclop/prototype.hpp"
#include "sclop/rng.hpp"
#include "sclop/sclop.hpp"
#include "sclop/similarity.hpp"
#include "sclop/synth.hpp"

using namespace sclop;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s — %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

TopicCounts make_topic(const std::vector<std::int64_t>& counts, TopicRef origin) {
  TopicCounts topic;
  topic.origin = origin;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] > 0) {
      topic.counts.emplace_back(static_cast<std::int32_t>(v + 1), counts[v]);
      topic.total += counts[v];
    }
  }
  return topic;
}

RunSet runset_from_topics(const std::vector<std::vector<std::vector<std::int64_t>>>& runs_cols) {
  RunSet runs;
  const auto vocab = static_cast<std::int32_t>(runs_cols.front().front().size());
  for (const auto& columns : runs_cols) {
    TopicCountMatrix matrix;
    matrix.vocab = vocab;
    matrix.topics = static_cast<std::int32_t>(columns.size());
    matrix.counts.assign(static_cast<std::size_t>(vocab) * columns.size(), 0);
    for (std::int32_t k = 0; k < matrix.topics; ++k)
      for (std::int32_t v = 0; v < vocab; ++v)
        matrix.at(v, k) = columns[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
    runs.runs.push_back(std::move(matrix));
    runs.seeds.push_back(0);
  }
  return runs;
}

// ---- 1: the eleven-word toy example, exact and under a millisecond ----

void check_toy_example() {
  const std::vector<std::int64_t> z1 = {1668, 446, 91, 259, 695, 500, 8, 0, 397, 394, 1};
  const std::vector<std::int64_t> z2 = {2860, 854, 876, 693, 0, 0, 474, 462, 53, 11, 4};
  const auto t1 = make_topic(z1, {0, 0});
  const auto t2 = make_topic(z2, {1, 0});

  double thresholds0 = 0.0, thresholds1 = 0.0, jm = 0.0;
  double best = 1e9;
  for (int rep = 0; rep < 3; ++rep) {
    const auto start = Clock::now();
    const auto thresholds =
        threshold_vector({t1, t2}, ThresholdConfig{ThresholdMode::relative, 500.0});
    jm = modified_jaccard(t1, t2, thresholds[0], thresholds[1]);
    best = std::min(best, seconds_since(start));
    thresholds0 = thresholds[0];
    thresholds1 = thresholds[1];
  }

  // Recount the indicator columns directly from the definition.
  std::int64_t inter = 0, uni = 0;
  for (std::size_t v = 0; v < z1.size(); ++v) {
    const bool above1 = static_cast<double>(z1[v]) > thresholds0;
    const bool above2 = static_cast<double>(z2[v]) > thresholds1;
    inter += above1 && above2;
    uni += above1 || above2;
  }

  char printed[32];
  std::snprintf(printed, sizeof(printed), "%.2f %.3f", thresholds0, thresholds1);
  const bool pass = t1.total == 4459 && t2.total == 6287 && thresholds0 == 4459.0 / 500.0 &&
                    thresholds1 == 12.574 && std::string(printed) == "8.92 12.574" &&
                    inter == 5 && uni == 10 && jm == 0.5 && best < 1e-3;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "thresholds (%.4f, %.4f), intersection %lld, union %lld, J_m = %.4f, %.3f ms",
                thresholds0, thresholds1, static_cast<long long>(inter),
                static_cast<long long>(uni), jm, best * 1e3);
  report("toy example (11 words, d=500)", pass, detail);
}

// ---- 2: worked normalization arithmetic at R=4, K=50 ----

void check_worked_arithmetic() {
  const bool root_ok = disparity(std::vector<std::int64_t>{50, 50, 50, 50}) == 9800.0;

  // A 200-leaf dendrogram whose optimal pruning reaches exactly u_sum = 25:
  // 40 perfect quadruples, 10 cross-run pairs (U = 1 each), 20 singletons
  // (U = 3/4 each): 10 * 1 + 20 * 0.75 = 25.
  Dendrogram dend;
  const std::int32_t runs = 4;
  for (std::int32_t r = 0; r < runs; ++r)
    for (std::int32_t k = 0; k < 50; ++k) dend.leaf_labels.push_back({r, k});
  const auto leaf_id = [&](std::int32_t r, std::int32_t k) { return r * 50 + k; };

  std::vector<std::int32_t> open;  // roots of the pruned units
  std::int32_t next_id = 200;
  double height = 0.01;
  const auto merge = [&](std::int32_t a, std::int32_t b) {
    dend.merges.push_back({std::min(a, b), std::max(a, b), height});
    height += 0.001;
    return next_id++;
  };

  for (std::int32_t k = 0; k < 40; ++k) {  // quadruples over topics 0..39
    auto ab = merge(leaf_id(0, k), leaf_id(1, k));
    auto cd = merge(leaf_id(2, k), leaf_id(3, k));
    open.push_back(merge(ab, cd));
  }
  for (std::int32_t k = 40; k < 50; ++k)  // pairs from runs 1 and 2
    open.push_back(merge(leaf_id(0, k), leaf_id(1, k)));
  for (std::int32_t k = 40; k < 50; ++k) {  // singletons from runs 3 and 4
    open.push_back(leaf_id(2, k));
    open.push_back(leaf_id(3, k));
  }
  height = 0.5;
  while (open.size() > 1) {  // chain the units into one root
    const auto a = open[open.size() - 2];
    const auto b = open[open.size() - 1];
    open.pop_back();
    open.pop_back();
    open.push_back(merge(a, b));
  }
  dend.validate();

  const auto report_out = score_dendrogram(dend, runs);
  const bool pass = root_ok && report_out.u_sum == 25.0 && report_out.u_max == 150.0 &&
                    report_out.score == 1.0 - 25.0 / 150.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "root disparity 9800 %s; u_sum=%.4f, u_max=%.1f, score=%.4f",
                root_ok ? "ok" : "WRONG", report_out.u_sum, report_out.u_max, report_out.score);
  report("worked arithmetic (R=4, K=50)", pass, detail);
}

// ---- 3: pruning optimality against the exhaustive antichain search ----

void check_dp_oracle() {
  const auto start = Clock::now();
  SplitMix64 rng(2024);
  int checked = 0;
  bool pass = true;
  for (int trial = 0; trial < 500 && pass; ++trial) {
    const auto runs = static_cast<std::int32_t>(2 + rng.below(3));
    const auto leaves = static_cast<std::int32_t>(2 + rng.below(11));
    const auto dend = oracles::random_dendrogram(leaves, runs, rng);
    const auto [best, partition] = oracles::brute_force_min_disparity(dend, runs, dend.root());
    const auto table = compute_disparities(dend, runs);
    if (table.min_scaled[static_cast<std::size_t>(dend.root())] != best) pass = false;

    std::int64_t attained = 0;
    std::size_t covered = 0;
    for (const auto& group : prune(dend, runs)) {
      attained += scaled_disparity(group.t);
      covered += group.members.size();
    }
    if (attained != best || covered != static_cast<std::size_t>(leaves)) pass = false;
    ++checked;
  }
  const double elapsed = seconds_since(start);
  pass = pass && checked == 500 && elapsed < 60.0;
  char detail[120];
  std::snprintf(detail, sizeof(detail), "%d random dendrograms (N<=12, R in {2,3,4}), %.2f s",
                checked, elapsed);
  report("pruning equals the exhaustive antichain optimum", pass, detail);
}

// ---- 4: linkage against the naive reference ----

void check_linkage_oracle() {
  const auto start = Clock::now();
  SplitMix64 rng(4096);
  int checked = 0;
  bool pass = true;
  for (int trial = 0; trial < 200 && pass; ++trial) {
    const auto n = static_cast<std::int32_t>(2 + rng.below(9));  // up to 10
    const auto dist = oracles::random_tie_free_distances(n, rng);
    const auto fast = complete_linkage(dist, n, oracles::sequential_labels(n));
    const auto naive = oracles::naive_complete_linkage(dist, n, oracles::sequential_labels(n));
    for (std::size_t i = 0; i < fast.merges.size(); ++i) {
      if (fast.merges[i].left != naive.merges[i].left ||
          fast.merges[i].right != naive.merges[i].right ||
          fast.merges[i].height != naive.merges[i].height)
        pass = false;
    }
    ++checked;
  }
  const double elapsed = seconds_since(start);
  pass = pass && checked == 200 && elapsed < 10.0;
  char detail[120];
  std::snprintf(detail, sizeof(detail), "%d random matrices (N<=10), exact match, %.2f s",
                checked, elapsed);
  report("complete linkage equals the naive reference", pass, detail);
}

// ---- 5: boundary scores of the full pipeline ----

void check_boundary_scores() {
  const ThresholdConfig zero{ThresholdMode::absolute, 0.0};

  // Three identical runs with four distinct topics each.
  std::vector<std::vector<std::int64_t>> distinct;
  for (std::int32_t k = 0; k < 4; ++k) {
    std::vector<std::int64_t> column(8, 0);
    column[static_cast<std::size_t>(2 * k)] = 9;
    column[static_cast<std::size_t>(2 * k + 1)] = 3;
    distinct.push_back(std::move(column));
  }
  const auto duplicated = runset_from_topics({distinct, distinct, distinct});
  const auto top = sclop::sclop(duplicated, zero);

  // Within-run identical topics, disjoint vocabulary across two runs.
  const std::vector<std::vector<std::int64_t>> left(3, {5, 5, 0, 0});
  const std::vector<std::vector<std::int64_t>> right(3, {0, 0, 5, 5});
  const auto disjoint = runset_from_topics({left, right});
  const auto bottom = sclop::sclop(disjoint, zero);

  const bool pass = top.score == 1.0 && bottom.score == 0.0;
  char detail[120];
  std::snprintf(detail, sizeof(detail),
                "duplicated runs: %.4f (want 1), disjoint runs: %.4f (want 0)", top.score,
                bottom.score);
  report("boundary scores are exact", pass, detail);
}

// ---- 6: randomized property suite ----

TopicCounts random_topic(SplitMix64& rng, std::int32_t vocab, TopicRef origin) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(vocab), 0);
  for (auto& c : counts)
    if (rng.uniform() < 0.6) c = static_cast<std::int64_t>(rng.below(200));
  return make_topic(counts, origin);
}

void check_property_suite() {
  SplitMix64 rng(555);
  long cases = 0;
  long violations = 0;

  // Modified Jaccard: symmetry, bounds, threshold monotonicity (shrinkage of
  // both indicator sets when both bounds rise).
  for (int trial = 0; trial < 400; ++trial) {
    const auto a = random_topic(rng, 14, {0, 0});
    const auto b = random_topic(rng, 14, {1, 0});
    const double c_a = rng.uniform() * 60.0;
    const double c_b = rng.uniform() * 60.0;
    const double raise = 1.0 + rng.uniform() * 40.0;
    const double s = modified_jaccard(a, b, c_a, c_b);
    if (s != modified_jaccard(b, a, c_b, c_a)) ++violations;
    if (!(s >= 0.0 && s <= 1.0)) ++violations;
    std::int64_t inter_low = 0, uni_low = 0, inter_high = 0, uni_high = 0;
    for (std::int32_t v = 1; v <= 14; ++v) {
      std::int64_t na = 0, nb = 0;
      for (const auto& [id, c] : a.counts)
        if (id == v) na = c;
      for (const auto& [id, c] : b.counts)
        if (id == v) nb = c;
      inter_low += (na > c_a) && (nb > c_b);
      uni_low += (na > c_a) || (nb > c_b);
      inter_high += (na > c_a + raise) && (nb > c_b + raise);
      uni_high += (na > c_a + raise) || (nb > c_b + raise);
    }
    if (inter_high > inter_low || uni_high > uni_low) ++violations;
    ++cases;
  }

  // Scoring is invariant under run relabeling of a fixed tree.
  for (int trial = 0; trial < 250; ++trial) {
    const auto runs = static_cast<std::int32_t>(2 + rng.below(3));
    const auto leaves = static_cast<std::int32_t>(runs + rng.below(10));
    auto dend = oracles::random_dendrogram(leaves, runs, rng);
    const double base = score_dendrogram(dend, runs).score;
    std::vector<std::int32_t> perm(static_cast<std::size_t>(runs));
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    for (auto& label : dend.leaf_labels) label.run = perm[static_cast<std::size_t>(label.run)];
    if (score_dendrogram(dend, runs).score != base) ++violations;
    ++cases;
  }

  // Full-pipeline run permutation with the cosine measure (continuous values
  // keep the linkage free of ties).
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<std::vector<std::int64_t>>> sets(3);
    for (auto& run : sets) {
      run.resize(2);
      for (auto& column : run) {
        column.resize(6);
        for (auto& c : column) c = 1 + static_cast<std::int64_t>(rng.below(97));
      }
    }
    const auto base =
        sclop::sclop(runset_from_topics(sets), ThresholdConfig{}, Measure::cosine).score;
    std::swap(sets[0], sets[2]);
    const auto permuted =
        sclop::sclop(runset_from_topics(sets), ThresholdConfig{}, Measure::cosine).score;
    if (base != permuted) ++violations;
    ++cases;
  }

  // Prototype argmax dominance.
  for (int trial = 0; trial < 200; ++trial) {
    const auto runs = static_cast<std::int32_t>(2 + rng.below(8));
    std::vector<double> pairwise(static_cast<std::size_t>(runs) * runs, 1.0);
    for (std::int32_t i = 0; i < runs; ++i)
      for (std::int32_t j = i + 1; j < runs; ++j) {
        const double s = rng.uniform();
        pairwise[static_cast<std::size_t>(i) * runs + j] = s;
        pairwise[static_cast<std::size_t>(j) * runs + i] = s;
      }
    const auto result = prototype_from_pairwise(runs, pairwise);
    for (const auto mean : result.mean_similarity)
      if (result.mean_similarity[static_cast<std::size_t>(result.prototype_index)] < mean)
        ++violations;
    ++cases;
  }

  // Determinism of fit, replicate and the subsample study under fixed seeds.
  {
    SyntheticSpec spec;
    spec.true_topics = 3;
    spec.vocab_size = 36;
    spec.docs = 18;
    spec.doc_length = 16;
    spec.noise_rate = 0.2;
    spec.seed = 9;
    const auto corpus = synthesize_corpus(spec);
    LdaConfig cfg;
    cfg.topics = 3;
    cfg.alpha = cfg.beta = 1.0 / 3.0;
    cfg.iterations = 25;

    for (int trial = 0; trial < 30; ++trial) {
      cfg.seed = rng.next();
      if (fit_lda(corpus, cfg).topic_word != fit_lda(corpus, cfg).topic_word) ++violations;
      ++cases;
    }
    for (int trial = 0; trial < 10; ++trial) {
      const auto master = rng.next();
      const auto a = replicate(corpus, cfg, 3, master, 1);
      const auto b = replicate(corpus, cfg, 3, master, 2);
      for (std::int32_t r = 0; r < 3; ++r)
        if (a.runs[static_cast<std::size_t>(r)].counts !=
            b.runs[static_cast<std::size_t>(r)].counts)
          ++violations;
      ++cases;
    }
    std::vector<RunSet> sets;
    SplitMix64 seed_stream(31337);
    for (int s = 0; s < 3; ++s) sets.push_back(replicate(corpus, cfg, 4, seed_stream.next(), 2));
    const ThresholdConfig threshold{ThresholdMode::relative, 20.0};
    for (int trial = 0; trial < 20; ++trial) {
      const auto seed = rng.next();
      const auto a = subsample_study(sets, {2, 4}, seed, threshold);
      const auto b = subsample_study(sets, {2, 4}, seed, threshold, Measure::modified_jaccard, 5, 2);
      if (a.rows.size() != b.rows.size()) {
        ++violations;
      } else {
        for (std::size_t i = 0; i < a.rows.size(); ++i)
          if (a.rows[i].value != b.rows[i].value) ++violations;
      }
      ++cases;
    }
  }

  const bool pass = cases >= 1000 && violations == 0;
  char detail[120];
  std::snprintf(detail, sizeof(detail), "%ld randomized cases, %ld violations", cases, violations);
  report("property suite", pass, detail);
}

// ---- 7: desk-scale replication study ----

void check_replication_study() {
  const auto start = Clock::now();

  SyntheticSpec spec;
  spec.true_topics = 6;
  spec.vocab_size = 240;
  spec.docs = 72;
  spec.doc_length = 40;
  spec.topic_concentration = 30.0;
  spec.noise_rate = 0.35;
  spec.seed = 20240601;
  const auto corpus = synthesize_corpus(spec);

  LdaConfig cfg;
  cfg.topics = 6;
  cfg.alpha = cfg.beta = 1.0 / 6.0;
  cfg.iterations = 80;

  const std::int32_t set_count = 20;
  const std::int32_t runs_per_set = 10;
  SplitMix64 seed_stream(777);
  std::vector<RunSet> sets;
  sets.reserve(set_count);
  for (std::int32_t s = 0; s < set_count; ++s)
    sets.push_back(replicate(corpus, cfg, runs_per_set, seed_stream.next(), 2));

  const std::vector<std::int32_t> sizes = {2, 4, 6, 8, 10};
  const ThresholdConfig threshold{ThresholdMode::relative, 100.0};
  const auto study = subsample_study(sets, sizes, seed_stream.next(), threshold,
                                     Measure::modified_jaccard, 5, 2);

  // Raw baseline: per-run means within the full sets (the size = R rows).
  const Ecdf raw(study.samples(runs_per_set, false));

  int decile_checks = 0;
  int decile_ok = 0;
  std::vector<double> mean_by_size;
  for (const auto size : sizes) {
    const auto proto_samples = study.samples(size, true);
    const Ecdf proto(proto_samples);
    for (int d = 1; d <= 9; ++d) {
      const double q = d / 10.0;
      ++decile_checks;
      if (proto.quantile(q) >= raw.quantile(q)) ++decile_ok;
    }
    mean_by_size.push_back(std::accumulate(proto_samples.begin(), proto_samples.end(), 0.0) /
                           static_cast<double>(proto_samples.size()));
  }
  int inversions = 0;
  for (std::size_t i = 1; i < mean_by_size.size(); ++i)
    if (mean_by_size[i] < mean_by_size[i - 1]) ++inversions;

  const double elapsed = seconds_since(start);
  const bool dominance = decile_ok * 10 >= decile_checks * 9;
  const bool pass = dominance && inversions <= 1 && elapsed < 600.0;
  char detail[220];
  std::snprintf(detail, sizeof(detail),
                "20 sets x 10 runs: prototype ECDF right of raw at %d/%d deciles, means by size "
                "%.3f/%.3f/%.3f/%.3f/%.3f (%d inversions), %.1f s",
                decile_ok, decile_checks, mean_by_size[0], mean_by_size[1], mean_by_size[2],
                mean_by_size[3], mean_by_size[4], inversions, elapsed);
  report("replication study on synthetic corpora", pass, detail);
}

// ---- 8: sampler sanity on a separable corpus ----

void check_gibbs_sanity() {
  Corpus corpus;
  corpus.vocabulary = {"a", "b"};
  corpus.doc_ids = {"d1", "d2"};
  corpus.documents = {{1, 1, 1}, {2, 2, 2}};

  int concentrated = 0;
  for (int seed = 0; seed < 50; ++seed) {
    LdaConfig cfg;
    cfg.topics = 2;
    cfg.alpha = 0.02;
    cfg.beta = 0.02;
    cfg.iterations = 200;
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.validate_sweeps = true;  // count conservation re-checked after every sweep
    const auto state = fit_lda(corpus, cfg);
    bool both = true;
    for (std::int64_t m = 0; m < 2; ++m) {
      const auto best = std::max(state.doc_topic_at(m, 0), state.doc_topic_at(m, 1));
      if (static_cast<double>(best) / 3.0 <= 0.9) both = false;
    }
    if (both) ++concentrated;
  }
  const bool pass = concentrated >= 45;
  char detail[120];
  std::snprintf(detail, sizeof(detail),
                "%d/50 seeds fully concentrated; per-sweep count checks enabled", concentrated);
  report("sampler sanity on the separable corpus", pass, detail);
}

}  // namespace

int main() {
  check_toy_example();
  check_worked_arithmetic();
  check_dp_oracle();
  check_linkage_oracle();
  check_boundary_scores();
  check_property_suite();
  check_replication_study();
  check_gibbs_sanity();
  if (failures == 0) {
    std::printf("all acceptance checks passed\n");
  } else {
    std::printf("%d acceptance check(s) failed\n", failures);
  }
  return failures;
}
