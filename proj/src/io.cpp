#include "sclop/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sclop {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse_json_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse " + file.string() + ": " + e.what());
  }
  return j;
}

void write_json_file(const ordered_json& j, const fs::path& file) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + file.string());
}

std::string run_stem(std::int32_t run_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "run_%04d", run_index + 1);
  return std::string(buf);
}

}  // namespace

std::string read_text_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& content, const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << content;
  if (!out) throw IoError("write failed for " + file.string());
}

std::vector<RawDocument> read_text_directory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RawDocument> docs;
  docs.reserve(files.size());
  for (const auto& file : files)
    docs.push_back({file.filename().string(), read_text_file(file), {}});
  if (docs.empty()) throw IoError("no .txt files in " + dir.string());
  return docs;
}

std::vector<RawDocument> read_jsonl(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  std::vector<RawDocument> docs;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IoError(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.contains("id") || !j.contains("text"))
      throw IoError(file.string() + ":" + std::to_string(line_no) +
                    ": object needs \"id\" and \"text\"");
    RawDocument doc;
    doc.id = j["id"].get<std::string>();
    doc.text = j["text"].get<std::string>();
    for (const auto& [key, value] : j.items()) {
      if (key != "id" && key != "text" && value.is_string())
        doc.meta.emplace_back(key, value.get<std::string>());
    }
    docs.push_back(std::move(doc));
  }
  if (docs.empty()) throw IoError("no documents in " + file.string());
  return docs;
}

std::unordered_set<std::string> read_stopword_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open stopword file " + file.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
    if (start < line.size()) words.insert(line.substr(start));
  }
  return words;
}

void write_corpus_json(const Corpus& corpus, const fs::path& file) {
  ordered_json j;
  j["vocabulary"] = corpus.vocabulary;
  j["docs"] = ordered_json::array();
  for (std::size_t m = 0; m < corpus.documents.size(); ++m) {
    ordered_json doc;
    doc["id"] = corpus.doc_ids[m];
    doc["tokens"] = corpus.documents[m];
    j["docs"].push_back(std::move(doc));
  }
  write_json_file(j, file);
}

Corpus read_corpus_json(const fs::path& file) {
  const auto j = parse_json_file(file);
  if (!j.contains("vocabulary") || !j.contains("docs"))
    throw IoError(file.string() + ": corpus needs \"vocabulary\" and \"docs\"");
  Corpus corpus;
  try {
    corpus.vocabulary = j["vocabulary"].get<std::vector<std::string>>();
    for (const auto& doc : j["docs"]) {
      corpus.doc_ids.push_back(doc.at("id").get<std::string>());
      corpus.documents.push_back(doc.at("tokens").get<std::vector<std::int32_t>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(file.string() + ": " + e.what());
  }
  try {
    corpus.validate();
  } catch (const std::exception& e) {
    throw IoError(file.string() + ": " + e.what());
  }
  return corpus;
}

void write_preprocess_report(const PreprocessReport& report, const fs::path& file) {
  ordered_json j;
  j["input_docs"] = report.input_docs;
  j["duplicate_ids"] = report.duplicate_ids;
  j["empty_doc_ids"] = report.empty_doc_ids;
  j["vocab_before_min_count"] = report.vocab_before_min_count;
  j["vocab_size"] = report.vocab_size;
  j["total_tokens"] = report.total_tokens;
  write_json_file(j, file);
}

std::string csv_escape(const std::string& field) {
  const bool needs_quotes =
      field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

void write_run_csv(const TopicCountMatrix& matrix, const std::vector<std::string>& vocabulary,
                   const fs::path& file) {
  if (static_cast<std::int32_t>(vocabulary.size()) != matrix.vocab)
    throw std::invalid_argument("run csv: vocabulary size does not match the matrix");
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << "word";
  for (std::int32_t k = 0; k < matrix.topics; ++k) out << ",t" << (k + 1);
  out << '\n';
  for (std::int32_t v0 = 0; v0 < matrix.vocab; ++v0) {
    out << csv_escape(vocabulary[static_cast<std::size_t>(v0)]);
    for (std::int32_t k = 0; k < matrix.topics; ++k) out << ',' << matrix.at(v0, k);
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + file.string());
}

TopicCountMatrix read_run_csv(const fs::path& file, std::vector<std::string>* vocabulary_out) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(file.string() + ": empty file");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "word")
    throw IoError(file.string() + ": expected header starting with \"word\"");
  const auto topics = static_cast<std::int32_t>(header.size() - 1);

  std::vector<std::string> vocabulary;
  std::vector<std::int64_t> counts;
  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<std::int32_t>(fields.size()) != topics + 1)
      throw IoError(file.string() + ":" + std::to_string(line_no) + ": wrong field count");
    vocabulary.push_back(fields[0]);
    for (std::int32_t k = 1; k <= topics; ++k) {
      try {
        counts.push_back(std::stoll(fields[static_cast<std::size_t>(k)]));
      } catch (const std::exception&) {
        throw IoError(file.string() + ":" + std::to_string(line_no) + ": bad count \"" +
                      fields[static_cast<std::size_t>(k)] + "\"");
      }
    }
  }
  TopicCountMatrix matrix;
  matrix.vocab = static_cast<std::int32_t>(vocabulary.size());
  matrix.topics = topics;
  matrix.counts = std::move(counts);
  if (vocabulary_out != nullptr) *vocabulary_out = std::move(vocabulary);
  return matrix;
}

void write_run_meta(const RunMeta& meta, const fs::path& file) {
  ordered_json j;
  j["K"] = meta.topics;
  j["alpha"] = meta.alpha;
  j["beta"] = meta.beta;
  j["iterations"] = meta.iterations;
  j["seed"] = meta.seed;
  j["corpus_hash"] = meta.corpus_hash;
  j["run_index"] = meta.run_index;
  write_json_file(j, file);
}

RunMeta read_run_meta(const fs::path& file) {
  const auto j = parse_json_file(file);
  RunMeta meta;
  try {
    meta.topics = j.at("K").get<std::int32_t>();
    meta.alpha = j.at("alpha").get<double>();
    meta.beta = j.at("beta").get<double>();
    meta.iterations = j.at("iterations").get<std::int32_t>();
    meta.seed = j.at("seed").get<std::uint64_t>();
    meta.corpus_hash = j.at("corpus_hash").get<std::string>();
    meta.run_index = j.at("run_index").get<std::int32_t>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(file.string() + ": " + e.what());
  }
  return meta;
}

void write_run_dir(const RunSet& runs, const fs::path& dir) {
  runs.validate();
  if (runs.vocabulary.empty())
    throw std::invalid_argument("run dir: run set carries no vocabulary");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (std::int32_t r = 0; r < runs.run_count(); ++r) {
    const auto stem = run_stem(r);
    write_run_csv(runs.runs[static_cast<std::size_t>(r)], runs.vocabulary, dir / (stem + ".csv"));
    RunMeta meta;
    meta.topics = runs.config.topics;
    meta.alpha = runs.config.alpha;
    meta.beta = runs.config.beta;
    meta.iterations = runs.config.iterations;
    meta.seed = runs.seeds[static_cast<std::size_t>(r)];
    meta.corpus_hash = runs.corpus_hash;
    meta.run_index = r;
    write_run_meta(meta, dir / (stem + ".json"));
  }
}

RunSet read_run_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> csv_files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("run_", 0) == 0 &&
        entry.path().extension() == ".csv")
      csv_files.push_back(entry.path());
  }
  std::sort(csv_files.begin(), csv_files.end());
  if (csv_files.empty()) throw IoError("no run_*.csv files in " + dir.string());

  RunSet runs;
  for (const auto& csv : csv_files) {
    std::vector<std::string> vocabulary;
    auto matrix = read_run_csv(csv, &vocabulary);
    auto meta_file = csv;
    meta_file.replace_extension(".json");
    const auto meta = read_run_meta(meta_file);
    if (meta.topics != matrix.topics)
      throw IoError(csv.string() + ": sidecar K does not match the matrix");

    if (runs.runs.empty()) {
      runs.vocabulary = std::move(vocabulary);
      runs.config.topics = meta.topics;
      runs.config.alpha = meta.alpha;
      runs.config.beta = meta.beta;
      runs.config.iterations = meta.iterations;
      runs.corpus_hash = meta.corpus_hash;
    } else {
      if (vocabulary != runs.vocabulary)
        throw std::runtime_error(csv.string() + ": vocabulary differs from the other runs");
      if (meta.corpus_hash != runs.corpus_hash)
        throw std::runtime_error(csv.string() + ": run was fitted on a different corpus");
      if (matrix.topics != runs.config.topics)
        throw std::runtime_error(csv.string() + ": topic count differs from the other runs");
    }
    runs.runs.push_back(std::move(matrix));
    runs.seeds.push_back(meta.seed);
  }
  runs.validate();
  return runs;
}

void write_similarity_csv(const SimilarityMatrix& matrix, const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << "topic";
  for (const auto& label : matrix.labels) out << ',' << label;
  out << '\n';
  out.precision(17);
  for (std::int32_t i = 0; i < matrix.n; ++i) {
    out << matrix.labels[static_cast<std::size_t>(i)];
    for (std::int32_t j = 0; j < matrix.n; ++j) out << ',' << matrix.at(i, j);
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + file.string());
}

void write_similarity_meta(const SimilarityMatrix& matrix, const ThresholdConfig& cfg,
                           std::int32_t n_top, const fs::path& file) {
  ordered_json j;
  j["measure"] = measure_name(matrix.measure);
  j["threshold"] = {{"mode", cfg.mode == ThresholdMode::absolute ? "absolute" : "relative"},
                    {"value", cfg.value}};
  if (matrix.measure == Measure::average_jaccard) j["top_words"] = n_top;
  ordered_json degenerate = ordered_json::array();
  for (const auto i : matrix.degenerate_topics)
    degenerate.push_back(matrix.labels[static_cast<std::size_t>(i)]);
  j["degenerate_topics"] = std::move(degenerate);
  write_json_file(j, file);
}

void write_sclop_report_json(const SclopReport& report, const fs::path& file) {
  ordered_json j;
  j["score"] = report.score;
  j["u_sum"] = report.u_sum;
  j["u_max"] = report.u_max;
  j["groups"] = ordered_json::array();
  for (const auto& group : report.groups) {
    ordered_json g;
    g["members"] = ordered_json::array();
    for (const auto& member : group.members) g["members"].push_back(label_of(member));
    g["t"] = group.t;
    g["disparity"] = group.disparity;
    j["groups"].push_back(std::move(g));
  }
  write_json_file(j, file);
}

void write_pairwise_csv(const PrototypeResult& result, const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << "run";
  for (std::int32_t r = 0; r < result.runs; ++r) out << ",run" << (r + 1);
  out << '\n';
  out.precision(17);
  for (std::int32_t i = 0; i < result.runs; ++i) {
    out << "run" << (i + 1);
    for (std::int32_t j = 0; j < result.runs; ++j) out << ',' << result.pair_at(i, j);
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + file.string());
}

void write_means_csv(const PrototypeResult& result, const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << "run,mean_similarity,prototype\n";
  out.precision(17);
  for (std::int32_t r = 0; r < result.runs; ++r) {
    out << (r + 1) << ',' << result.mean_similarity[static_cast<std::size_t>(r)] << ','
        << (r == result.prototype_index ? 1 : 0) << '\n';
  }
  if (!out) throw IoError("write failed for " + file.string());
}

void write_study_csv(const StudyResult& result, const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << "set,size,kind,value\n";
  out.precision(17);
  for (const auto& row : result.rows) {
    out << (row.set + 1) << ',' << row.size << ','
        << (row.is_prototype ? "prototype" : "raw") << ',' << row.value << '\n';
  }
  if (!out) throw IoError("write failed for " + file.string());
}

}  // namespace sclop
