#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "sclop/corpus.hpp"
#include "sclop/lda.hpp"
#include "sclop/prototype.hpp"
#include "sclop/sclop.hpp"
#include "sclop/similarity.hpp"

namespace sclop {

// ---- raw document input ----

/// Every *.txt file of a directory becomes one document (id = filename),
/// ordered by filename.
std::vector<RawDocument> read_text_directory(const std::filesystem::path& dir);

/// JSON-lines file with one {"id": ..., "text": ...} object per line; other
/// string fields are kept as metadata.
std::vector<RawDocument> read_jsonl(const std::filesystem::path& file);

/// One word per line, UTF-8; blank lines ignored.
std::unordered_set<std::string> read_stopword_file(const std::filesystem::path& file);

// ---- corpus ----

/// {"vocabulary": [...], "docs": [{"id":..., "tokens":[...]}]}
void write_corpus_json(const Corpus& corpus, const std::filesystem::path& file);
Corpus read_corpus_json(const std::filesystem::path& file);

void write_preprocess_report(const PreprocessReport& report, const std::filesystem::path& file);

// ---- run artifacts ----

/// Sidecar fields stored next to each run's count matrix.
struct RunMeta {
  std::int32_t topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::int32_t iterations = 0;
  std::uint64_t seed = 0;
  std::string corpus_hash;
  std::int32_t run_index = 0;  // 0-based
};

/// CSV with a word column followed by one integer column per topic.
void write_run_csv(const TopicCountMatrix& matrix, const std::vector<std::string>& vocabulary,
                   const std::filesystem::path& file);
TopicCountMatrix read_run_csv(const std::filesystem::path& file,
                              std::vector<std::string>* vocabulary_out = nullptr);

void write_run_meta(const RunMeta& meta, const std::filesystem::path& file);
RunMeta read_run_meta(const std::filesystem::path& file);

/// Writes run_0001.csv / run_0001.json ... into dir (created if needed).
void write_run_dir(const RunSet& runs, const std::filesystem::path& dir);

/// Reads a directory produced by write_run_dir. Validates that all runs
/// share vocabulary, topic count and corpus hash.
RunSet read_run_dir(const std::filesystem::path& dir);

// ---- analysis artifacts ----

/// Matrix CSV with "r.k" labels as header and row names, plus a sidecar JSON
/// recording measure and threshold configuration.
void write_similarity_csv(const SimilarityMatrix& matrix, const std::filesystem::path& file);
void write_similarity_meta(const SimilarityMatrix& matrix, const ThresholdConfig& cfg,
                           std::int32_t n_top, const std::filesystem::path& file);

/// {"score":..., "u_sum":..., "u_max":..., "groups":[{"members":[...],
///  "t":[...], "disparity":...}]}
void write_sclop_report_json(const SclopReport& report, const std::filesystem::path& file);

/// R x R pairwise score matrix as CSV with run labels.
void write_pairwise_csv(const PrototypeResult& result, const std::filesystem::path& file);

/// Per-run mean similarities and the selected prototype.
void write_means_csv(const PrototypeResult& result, const std::filesystem::path& file);

/// Long format: set,size,kind,value.
void write_study_csv(const StudyResult& result, const std::filesystem::path& file);

// ---- small shared helpers ----

std::string csv_escape(const std::string& field);
std::vector<std::string> split_csv_line(const std::string& line);  // handles quoted fields
void write_text_file(const std::string& content, const std::filesystem::path& file);
std::string read_text_file(const std::filesystem::path& file);

}  // namespace sclop
