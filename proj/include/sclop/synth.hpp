#pragma once

#include <cstdint>

#include "sclop/corpus.hpp"

namespace sclop {

/// Parameters of the bundled synthetic-corpus generator. The vocabulary is
/// split into `true_topics` contiguous blocks; each document is owned by one
/// block (round-robin) and draws its tokens from a weighted mixture that
/// puts `topic_concentration` times more weight on the owned block, except
/// that a `noise_rate` share of tokens is drawn uniformly from the whole
/// vocabulary.
struct SyntheticSpec {
  std::int32_t true_topics = 5;
  std::int32_t vocab_size = 250;
  std::int32_t docs = 100;
  std::int32_t doc_length = 50;
  double topic_concentration = 50.0;
  double noise_rate = 0.0;  // in [0, 1)
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

/// Deterministic synthetic corpus; words are "w0001".."wNNNN" so the sorted
/// vocabulary keeps numeric order. The full planned vocabulary is emitted
/// even if some words are never drawn.
Corpus synthesize_corpus(const SyntheticSpec& spec);

}  // namespace sclop
