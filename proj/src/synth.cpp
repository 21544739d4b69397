#include "sclop/synth.hpp"

#include <cstdio>
#include <stdexcept>

#include "sclop/rng.hpp"

namespace sclop {

void SyntheticSpec::validate() const {
  if (true_topics < 1) throw std::invalid_argument("synth: true_topics must be >= 1");
  if (vocab_size < true_topics)
    throw std::invalid_argument("synth: vocab_size must be >= true_topics");
  if (docs < 1) throw std::invalid_argument("synth: docs must be >= 1");
  if (doc_length < 1) throw std::invalid_argument("synth: doc_length must be >= 1");
  if (!(topic_concentration > 0.0))
    throw std::invalid_argument("synth: topic_concentration must be > 0");
  if (!(noise_rate >= 0.0 && noise_rate < 1.0))
    throw std::invalid_argument("synth: noise_rate must lie in [0, 1)");
}

Corpus synthesize_corpus(const SyntheticSpec& spec) {
  spec.validate();
  const auto v_count = spec.vocab_size;
  const auto t_count = spec.true_topics;

  int width = 1;
  for (std::int32_t scale = 10; scale <= v_count; scale *= 10) ++width;

  Corpus corpus;
  corpus.vocabulary.reserve(static_cast<std::size_t>(v_count));
  for (std::int32_t v = 1; v <= v_count; ++v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "w%0*d", width, v);
    corpus.vocabulary.emplace_back(buf);
  }

  // Contiguous vocabulary block owned by each topic.
  const auto block_start = [&](std::int32_t t) {
    return static_cast<std::int32_t>(static_cast<std::int64_t>(t) * v_count / t_count);
  };

  SplitMix64 rng(spec.seed);
  for (std::int32_t m = 0; m < spec.docs; ++m) {
    const std::int32_t topic = m % t_count;  // round-robin keeps every block covered
    const auto start = block_start(topic);
    const auto block = block_start(topic + 1) - start;
    const double in_block_weight = spec.topic_concentration * static_cast<double>(block);
    const double total_weight = in_block_weight + static_cast<double>(v_count - block);

    std::vector<std::int32_t> tokens(static_cast<std::size_t>(spec.doc_length));
    for (auto& token : tokens) {
      std::int32_t v0;
      if (rng.uniform() < spec.noise_rate) {
        v0 = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(v_count)));
      } else if (rng.uniform() * total_weight < in_block_weight) {
        v0 = start + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(block)));
      } else {
        // Uniform over the words outside the owned block.
        auto off = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(v_count - block)));
        v0 = off < start ? off : off + block;
      }
      token = v0 + 1;
    }
    corpus.doc_ids.push_back("synth-" + std::to_string(m + 1));
    corpus.documents.push_back(std::move(tokens));
  }
  return corpus;
}

}  // namespace sclop
