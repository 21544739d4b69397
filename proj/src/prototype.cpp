#include "sclop/prototype.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "parallel.hpp"
#include "sclop/rng.hpp"

namespace sclop {

PrototypeResult prototype_from_pairwise(std::int32_t runs, const std::vector<double>& pairwise) {
  if (runs < 2) throw std::invalid_argument("prototype: R >= 2 required");
  if (pairwise.size() != static_cast<std::size_t>(runs) * static_cast<std::size_t>(runs))
    throw std::invalid_argument("prototype: pairwise matrix size mismatch");

  PrototypeResult result;
  result.runs = runs;
  result.pairwise = pairwise;
  for (std::int32_t i = 0; i < runs; ++i)
    result.pairwise[static_cast<std::int64_t>(i) * runs + i] = 1.0;

  result.mean_similarity.resize(static_cast<std::size_t>(runs));
  for (std::int32_t i = 0; i < runs; ++i) {
    double sum = 0.0;
    for (std::int32_t j = 0; j < runs; ++j) {
      if (j != i) sum += result.pair_at(i, j);
    }
    result.mean_similarity[static_cast<std::size_t>(i)] = sum / static_cast<double>(runs - 1);
  }

  result.prototype_index = 0;
  for (std::int32_t i = 1; i < runs; ++i) {
    if (result.mean_similarity[static_cast<std::size_t>(i)] >
        result.mean_similarity[static_cast<std::size_t>(result.prototype_index)])
      result.prototype_index = i;
  }
  const double best = result.mean_similarity[static_cast<std::size_t>(result.prototype_index)];
  std::string tied;
  for (std::int32_t i = result.prototype_index + 1; i < runs; ++i) {
    if (result.mean_similarity[static_cast<std::size_t>(i)] == best)
      tied += (tied.empty() ? "" : ", ") + std::to_string(i + 1);
  }
  if (!tied.empty())
    result.tie_note = "runs " + tied + " share the maximal mean; lowest index selected";
  return result;
}

PrototypeResult mean_similarity_matrix(const RunSet& runs, const ThresholdConfig& cfg,
                                       Measure measure, std::int32_t n_top, int jobs) {
  runs.validate();
  const auto r_count = runs.run_count();
  if (r_count < 2) throw std::invalid_argument("prototype: R >= 2 required");

  std::vector<std::pair<std::int32_t, std::int32_t>> index_pairs;
  for (std::int32_t i = 0; i < r_count; ++i)
    for (std::int32_t j = i + 1; j < r_count; ++j) index_pairs.emplace_back(i, j);

  std::vector<double> matrix(static_cast<std::size_t>(r_count) * r_count, 1.0);
  detail::parallel_for(static_cast<std::int64_t>(index_pairs.size()), jobs, [&](std::int64_t p) {
    const auto [i, j] = index_pairs[static_cast<std::size_t>(p)];
    const double s = sclop_pairwise(runs.runs[static_cast<std::size_t>(i)],
                                    runs.runs[static_cast<std::size_t>(j)], cfg, measure, n_top);
    matrix[static_cast<std::int64_t>(i) * r_count + j] = s;
    matrix[static_cast<std::int64_t>(j) * r_count + i] = s;
  });
  return prototype_from_pairwise(r_count, matrix);
}

Ecdf::Ecdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw std::invalid_argument("ecdf: at least one sample required");
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double Ecdf::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("ecdf: quantile level outside [0, 1]");
  if (q == 0.0) return sorted_.front();
  const auto n = sorted_.size();
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  return sorted_[std::min(n, std::max<std::size_t>(rank, 1)) - 1];
}

std::vector<double> StudyResult::samples(std::int32_t size, bool prototypes) const {
  std::vector<double> values;
  for (const auto& row : rows) {
    if (row.size == size && row.is_prototype == prototypes) values.push_back(row.value);
  }
  return values;
}

StudyResult subsample_study(const std::vector<RunSet>& sets, const std::vector<std::int32_t>& sizes,
                            std::uint64_t seed, const ThresholdConfig& cfg, Measure measure,
                            std::int32_t n_top, int jobs) {
  if (sets.size() < 2) throw std::invalid_argument("study: at least two run sets required");
  if (sizes.empty()) throw std::invalid_argument("study: at least one subsample size required");
  for (const auto& set : sets) set.validate();
  for (const auto size : sizes) {
    if (size < 2) throw std::invalid_argument("study: subsample sizes must be >= 2");
    for (const auto& set : sets) {
      if (size > set.run_count())
        throw std::invalid_argument("study: subsample size " + std::to_string(size) +
                                    " exceeds a set's run count");
    }
  }
  const auto k_per_run = sets.front().topics_per_run();
  for (const auto& set : sets) {
    if (set.topics_per_run() != k_per_run)
      throw std::invalid_argument("study: all sets must share the topic count");
  }

  const auto set_count = static_cast<std::int32_t>(sets.size());

  // Full pairwise matrix once per set; subsamples reuse its entries.
  std::vector<PrototypeResult> full(static_cast<std::size_t>(set_count));
  detail::parallel_for(set_count, jobs, [&](std::int64_t s) {
    full[static_cast<std::size_t>(s)] =
        mean_similarity_matrix(sets[static_cast<std::size_t>(s)], cfg, measure, n_top, 1);
  });

  // Subsample draws are seeded per (size, set) so evaluation order is free.
  SplitMix64 stream(seed);
  std::vector<std::vector<std::uint64_t>> draw_seeds(sizes.size());
  for (auto& per_set : draw_seeds) {
    per_set.resize(static_cast<std::size_t>(set_count));
    for (auto& s : per_set) s = stream.next();
  }

  StudyResult result;
  result.sizes = sizes;
  result.prototype_runs.assign(sizes.size(), std::vector<std::int32_t>(static_cast<std::size_t>(set_count), -1));

  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const auto size = sizes[si];
    for (std::int32_t s = 0; s < set_count; ++s) {
      const auto r_count = sets[static_cast<std::size_t>(s)].run_count();
      std::vector<std::int32_t> order(static_cast<std::size_t>(r_count));
      for (std::int32_t i = 0; i < r_count; ++i) order[static_cast<std::size_t>(i)] = i;
      SplitMix64 rng(draw_seeds[si][static_cast<std::size_t>(s)]);
      for (std::int32_t i = 0; i < size; ++i) {
        const auto j = i + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(r_count - i)));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
      }
      std::vector<std::int32_t> chosen(order.begin(), order.begin() + size);
      std::sort(chosen.begin(), chosen.end());

      const auto& pair_at = full[static_cast<std::size_t>(s)];
      double best_mean = -1.0;
      std::int32_t best_run = -1;
      for (std::int32_t i = 0; i < size; ++i) {
        double sum = 0.0;
        for (std::int32_t j = 0; j < size; ++j) {
          if (j != i)
            sum += pair_at.pair_at(chosen[static_cast<std::size_t>(i)],
                                   chosen[static_cast<std::size_t>(j)]);
        }
        const double mean = sum / static_cast<double>(size - 1);
        result.rows.push_back({s, size, false, mean});
        if (mean > best_mean) {
          best_mean = mean;
          best_run = chosen[static_cast<std::size_t>(i)];
        }
      }
      result.prototype_runs[si][static_cast<std::size_t>(s)] = best_run;
    }
  }

  // Score prototypes of different sets against each other, one matrix per
  // size. The same run pair can be selected at several sizes; cache scores.
  std::map<std::tuple<std::int32_t, std::int32_t, std::int32_t, std::int32_t>, double> cache;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    std::vector<std::pair<std::int32_t, std::int32_t>> todo;
    for (std::int32_t s1 = 0; s1 < set_count; ++s1)
      for (std::int32_t s2 = s1 + 1; s2 < set_count; ++s2) todo.emplace_back(s1, s2);

    std::vector<double> pair_scores(todo.size());
    std::vector<char> from_cache(todo.size(), 0);
    for (std::size_t p = 0; p < todo.size(); ++p) {
      const auto [s1, s2] = todo[p];
      const auto key = std::make_tuple(s1, result.prototype_runs[si][static_cast<std::size_t>(s1)],
                                       s2, result.prototype_runs[si][static_cast<std::size_t>(s2)]);
      const auto it = cache.find(key);
      if (it != cache.end()) {
        pair_scores[p] = it->second;
        from_cache[p] = 1;
      }
    }
    detail::parallel_for(static_cast<std::int64_t>(todo.size()), jobs, [&](std::int64_t p) {
      if (from_cache[static_cast<std::size_t>(p)]) return;
      const auto [s1, s2] = todo[static_cast<std::size_t>(p)];
      const auto r1 = result.prototype_runs[si][static_cast<std::size_t>(s1)];
      const auto r2 = result.prototype_runs[si][static_cast<std::size_t>(s2)];
      pair_scores[static_cast<std::size_t>(p)] =
          sclop_pairwise(sets[static_cast<std::size_t>(s1)].runs[static_cast<std::size_t>(r1)],
                         sets[static_cast<std::size_t>(s2)].runs[static_cast<std::size_t>(r2)],
                         cfg, measure, n_top);
    });
    std::vector<double> sums(static_cast<std::size_t>(set_count), 0.0);
    for (std::size_t p = 0; p < todo.size(); ++p) {
      const auto [s1, s2] = todo[p];
      if (!from_cache[p]) {
        const auto key = std::make_tuple(s1, result.prototype_runs[si][static_cast<std::size_t>(s1)],
                                         s2, result.prototype_runs[si][static_cast<std::size_t>(s2)]);
        cache.emplace(key, pair_scores[p]);
      }
      sums[static_cast<std::size_t>(s1)] += pair_scores[p];
      sums[static_cast<std::size_t>(s2)] += pair_scores[p];
    }
    for (std::int32_t s = 0; s < set_count; ++s) {
      result.rows.push_back({s, sizes[si], true,
                             sums[static_cast<std::size_t>(s)] / static_cast<double>(set_count - 1)});
    }
  }
  return result;
}

}  // namespace sclop
