#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sclop {

/// One input document before any processing.
struct RawDocument {
  std::string id;    // nonempty, unique within a collection
  std::string text;  // UTF-8
  std::vector<std::pair<std::string, std::string>> meta;
};

/// Switches for the text cleaning pipeline. Filters apply in the order
/// lowercase -> strip numbers/punctuation -> stopwords -> minimum count,
/// and the minimum-count filter counts occurrences after stopword removal.
struct PreprocessConfig {
  bool lowercase = true;
  bool strip_numbers = true;
  bool strip_punctuation = true;
  bool deduplicate = true;
  std::int64_t min_word_count = 6;
  std::unordered_set<std::string> stopwords;
};

/// What the pipeline removed, for reporting next to the corpus file.
struct PreprocessReport {
  std::int64_t input_docs = 0;
  std::vector<std::string> duplicate_ids;   // removed exact-text duplicates
  std::vector<std::string> empty_doc_ids;   // dropped: no tokens survived
  std::int64_t vocab_before_min_count = 0;  // distinct words after stopword removal
  std::int64_t vocab_size = 0;
  std::int64_t total_tokens = 0;
};

/// Tokenized corpus: documents as sequences of 1-based ids into a sorted
/// vocabulary. Documents that lost every token during filtering are absent.
struct Corpus {
  std::vector<std::string> vocabulary;  // distinct, sorted lexicographically
  std::vector<std::string> doc_ids;
  std::vector<std::vector<std::int32_t>> documents;  // ids in [1, vocab_size()]

  std::int32_t vocab_size() const { return static_cast<std::int32_t>(vocabulary.size()); }
  std::int64_t doc_count() const { return static_cast<std::int64_t>(documents.size()); }
  std::int64_t total_tokens() const;
  const std::string& word(std::int32_t token_id) const;  // 1-based

  /// Throws std::runtime_error if any structural invariant is violated.
  void validate() const;
};

/// Collapses exact-text duplicates to the first occurrence, preserving input
/// order. Removed ids are appended to report->duplicate_ids when given.
std::vector<RawDocument> deduplicate(const std::vector<RawDocument>& docs,
                                     PreprocessReport* report = nullptr);

/// Character cleanup plus whitespace split for a single text: lowercases
/// ASCII letters, deletes ASCII digits/punctuation (per config), then splits
/// on Unicode whitespace. Tokens that lose all characters disappear.
std::vector<std::string> tokenize_words(const std::string& text, const PreprocessConfig& cfg);

/// Full pipeline: (optional) deduplication, per-document tokenization,
/// stopword removal, corpus-wide minimum-count filter, vocabulary build and
/// id mapping. Throws std::invalid_argument if docs is empty after
/// deduplication and std::runtime_error naming the responsible stage if no
/// document keeps a single token.
Corpus preprocess(const std::vector<RawDocument>& docs, const PreprocessConfig& cfg,
                  PreprocessReport* report = nullptr);

/// FNV-1a 64-bit digest over vocabulary, document ids and token streams.
/// Identifies the corpus a model run was fitted on.
std::uint64_t corpus_hash(const Corpus& corpus);

/// corpus_hash rendered as 16 lowercase hex digits.
std::string corpus_hash_hex(const Corpus& corpus);

}  // namespace sclop
