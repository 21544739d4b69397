#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sclop/corpus.hpp"
#include "sclop/exports.hpp"
#include "sclop/io.hpp"
#include "sclop/lda.hpp"
#include "sclop/prototype.hpp"
#include "sclop/rng.hpp"
#include "sclop/sclop.hpp"
#include "sclop/similarity.hpp"
#include "sclop/synth.hpp"
#include "sclop/types.hpp"

namespace fs = std::filesystem;
using namespace sclop;

namespace {

struct ThresholdOptions {
  std::string mode = "relative";
  double value = 500.0;
  std::string measure = "modified-jaccard";
  std::int32_t ranked_words = 5;

  ThresholdConfig config() const {
    ThresholdConfig cfg;
    if (mode == "absolute") {
      cfg.mode = ThresholdMode::absolute;
    } else if (mode == "relative") {
      cfg.mode = ThresholdMode::relative;
    } else {
      throw std::invalid_argument("threshold mode must be \"absolute\" or \"relative\"");
    }
    cfg.value = value;
    cfg.validate();
    return cfg;
  }
  Measure measure_enum() const { return measure_from_name(measure); }
};

void add_threshold_options(CLI::App* cmd, ThresholdOptions* opts) {
  cmd->add_option("--threshold-mode", opts->mode, "Word relevance bound: relative or absolute")
      ->capture_default_str();
  cmd->add_option("--threshold-value", opts->value,
                  "Divisor d (relative mode) or bound c (absolute mode)")
      ->capture_default_str();
  cmd->add_option("--measure", opts->measure,
                  "Topic similarity: modified-jaccard, cosine or average-jaccard")
      ->capture_default_str();
  cmd->add_option("--ranked-words", opts->ranked_words,
                  "Top-list depth for the average-jaccard measure")
      ->capture_default_str();
}

void add_jobs_option(CLI::App* cmd, int* jobs) {
  cmd->add_option("--jobs", *jobs, "Worker threads (results do not depend on this)")
      ->envname("SCLOP_JOBS")
      ->check(CLI::PositiveNumber);
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", score);
  return std::string(buf);
}

// ---- preprocess ----

struct PreprocessArgs {
  std::string input;
  std::string output;
  std::string stopword_file;
  std::string report_file;
  std::int64_t min_count = 6;
  bool keep_case = false;
  bool keep_numbers = false;
  bool keep_punctuation = false;
  bool no_dedup = false;
};

void run_preprocess(const PreprocessArgs& args) {
  const fs::path input(args.input);
  const auto docs = fs::is_directory(input) ? read_text_directory(input) : read_jsonl(input);

  PreprocessConfig cfg;
  cfg.lowercase = !args.keep_case;
  cfg.strip_numbers = !args.keep_numbers;
  cfg.strip_punctuation = !args.keep_punctuation;
  cfg.deduplicate = !args.no_dedup;
  cfg.min_word_count = args.min_count;
  if (!args.stopword_file.empty()) cfg.stopwords = read_stopword_file(args.stopword_file);

  PreprocessReport report;
  const auto corpus = preprocess(docs, cfg, &report);
  write_corpus_json(corpus, args.output);
  const auto report_path =
      args.report_file.empty() ? args.output + ".report.json" : args.report_file;
  write_preprocess_report(report, report_path);

  std::cout << "documents: " << corpus.doc_count() << " (of " << report.input_docs
            << " input, " << report.duplicate_ids.size() << " duplicates, "
            << report.empty_doc_ids.size() << " emptied)\n"
            << "vocabulary: " << corpus.vocab_size() << " (from "
            << report.vocab_before_min_count << " before the minimum-count filter)\n"
            << "tokens: " << corpus.total_tokens() << "\n"
            << "corpus written to " << args.output << "\n";
}

// ---- synth ----

struct SynthArgs {
  std::string output;
  SyntheticSpec spec;
};

void run_synth(const SynthArgs& args) {
  const auto corpus = synthesize_corpus(args.spec);
  write_corpus_json(corpus, args.output);
  std::cout << "synthetic corpus: " << corpus.doc_count() << " documents, vocabulary "
            << corpus.vocab_size() << ", tokens " << corpus.total_tokens() << "\n"
            << "written to " << args.output << "\n";
}

// ---- fit ----

struct FitArgs {
  std::string corpus_file;
  std::string out_dir;
  std::int32_t topics = 50;
  double alpha = -1.0;  // negative: default to 1/K
  double beta = -1.0;
  std::int32_t iterations = 270;
  std::int32_t reps = 4;
  std::uint64_t seed = 0;
  int jobs = 1;
};

LdaConfig lda_config_from(const FitArgs& args) {
  LdaConfig cfg;
  cfg.topics = args.topics;
  cfg.alpha = args.alpha > 0.0 ? args.alpha : 1.0 / static_cast<double>(args.topics);
  cfg.beta = args.beta > 0.0 ? args.beta : 1.0 / static_cast<double>(args.topics);
  cfg.iterations = args.iterations;
  return cfg;
}

void run_fit(const FitArgs& args) {
  const auto corpus = read_corpus_json(args.corpus_file);
  const auto cfg = lda_config_from(args);
  const auto runs = replicate(corpus, cfg, args.reps, args.seed, args.jobs);
  ensure_dir(args.out_dir);
  write_run_dir(runs, args.out_dir);
  std::cout << "fitted " << args.reps << " runs (K=" << cfg.topics << ", alpha=" << cfg.alpha
            << ", beta=" << cfg.beta << ", iterations=" << cfg.iterations << ")\n"
            << "run artifacts in " << args.out_dir << "\n";
}

// ---- sclop / export ----

struct ScoreArgs {
  std::string run_dir;
  std::string out_dir;
  ThresholdOptions threshold;
  std::string export_formats = "newick,dot,svg";
  std::int32_t top_words_count = 0;
  int jobs = 1;
};

// Pipeline pieces shared by the sclop and export commands.
struct PipelineArtifacts {
  RunSet runs;
  SimilarityMatrix similarity;
  Dendrogram dendrogram;
  SclopReport report;
};

PipelineArtifacts run_pipeline(const std::string& run_dir, const ThresholdOptions& threshold,
                               int jobs) {
  PipelineArtifacts art;
  art.runs = read_run_dir(run_dir);
  if (art.runs.run_count() < 2) throw std::invalid_argument("sclop: R >= 2 required");
  art.similarity = pairwise_similarity(art.runs, threshold.config(), threshold.measure_enum(),
                                       threshold.ranked_words, jobs);
  const auto dist = distance_from_similarity(art.similarity);
  std::vector<TopicRef> labels;
  for (std::int32_t r = 0; r < art.runs.run_count(); ++r)
    for (std::int32_t k = 0; k < art.runs.topics_per_run(); ++k)
      labels.push_back(TopicRef{r, k});
  art.dendrogram = complete_linkage(dist, art.similarity.n, std::move(labels));
  art.report = score_dendrogram(art.dendrogram, art.runs.run_count());
  return art;
}

// Annotation per leaf: the word with the highest importance in its topic.
std::vector<std::string> leaf_annotations(const PipelineArtifacts& art) {
  std::vector<std::string> notes(static_cast<std::size_t>(art.similarity.n));
  std::map<std::int32_t, std::vector<double>> importance_per_run;
  for (std::int32_t leaf = 0; leaf < art.dendrogram.leaf_count(); ++leaf) {
    const auto& ref = art.dendrogram.leaf_labels[static_cast<std::size_t>(leaf)];
    const auto& run = art.runs.runs[static_cast<std::size_t>(ref.run)];
    auto it = importance_per_run.find(ref.run);
    if (it == importance_per_run.end()) {
      try {
        it = importance_per_run.emplace(ref.run, word_importance(run)).first;
      } catch (const std::runtime_error&) {
        return {};  // a topic without assignments: skip annotations entirely
      }
    }
    const auto ids = top_words(it->second, run.vocab, run.topics, ref.topic, 1);
    if (!ids.empty() && !art.runs.vocabulary.empty())
      notes[static_cast<std::size_t>(leaf)] =
          art.runs.vocabulary[static_cast<std::size_t>(ids.front() - 1)];
  }
  return notes;
}

void write_exports(const PipelineArtifacts& art, const std::set<std::string>& formats,
                   const ScoreArgs& args) {
  const fs::path out(args.out_dir);
  if (formats.count("newick")) write_text_file(to_newick(art.dendrogram), out / "dendrogram.newick");
  if (formats.count("dot")) write_text_file(to_dot(art.dendrogram), out / "dendrogram.dot");
  if (formats.count("svg")) {
    const auto notes = leaf_annotations(art);
    const auto* notes_ptr = notes.empty() ? nullptr : &notes;
    write_text_file(to_svg(art.dendrogram, LeafColoring::by_run, nullptr, notes_ptr),
                    out / "dendrogram_by_run.svg");
    write_text_file(
        to_svg(art.dendrogram, LeafColoring::by_cluster, &art.report.groups, notes_ptr),
        out / "dendrogram_by_cluster.svg");
  }
  if (formats.count("similarity")) {
    write_similarity_csv(art.similarity, out / "similarity.csv");
    write_similarity_meta(art.similarity, args.threshold.config(), args.threshold.ranked_words,
                          out / "similarity.json");
  }
  if (formats.count("topwords") && args.top_words_count > 0) {
    std::ofstream csv(out / "top_words.csv");
    if (!csv) throw IoError("cannot write " + (out / "top_words.csv").string());
    csv << "run,topic,rank,word,importance\n";
    for (std::int32_t r = 0; r < art.runs.run_count(); ++r) {
      const auto& run = art.runs.runs[static_cast<std::size_t>(r)];
      const auto importance = word_importance(run);
      for (std::int32_t k = 0; k < run.topics; ++k) {
        const auto ids = top_words(importance, run.vocab, run.topics, k, args.top_words_count);
        for (std::size_t rank = 0; rank < ids.size(); ++rank) {
          csv << (r + 1) << ',' << (k + 1) << ',' << (rank + 1) << ','
              << csv_escape(art.runs.vocabulary[static_cast<std::size_t>(ids[rank] - 1)]) << ','
              << importance[static_cast<std::int64_t>(ids[rank] - 1) * run.topics + k] << '\n';
        }
      }
    }
  }
}

void run_sclop(const ScoreArgs& args) {
  const auto art = run_pipeline(args.run_dir, args.threshold, args.jobs);
  ensure_dir(args.out_dir);
  const fs::path out(args.out_dir);

  write_sclop_report_json(art.report, out / "report.json");
  write_similarity_csv(art.similarity, out / "similarity.csv");
  write_similarity_meta(art.similarity, args.threshold.config(), args.threshold.ranked_words,
                        out / "similarity.json");

  std::set<std::string> formats;
  for (const auto& f : split_list(args.export_formats)) formats.insert(f);
  write_exports(art, formats, args);

  std::cout << "S-CLOP: " << format_score(art.report.score) << "\n"
            << "clusters: " << art.report.groups.size() << " (u_sum=" << art.report.u_sum
            << ", u_max=" << art.report.u_max << ")\n"
            << "report in " << args.out_dir << "\n";
}

void run_export(const ScoreArgs& args) {
  const auto art = run_pipeline(args.run_dir, args.threshold, args.jobs);
  ensure_dir(args.out_dir);
  std::set<std::string> formats;
  for (const auto& f : split_list(args.export_formats)) formats.insert(f);
  write_exports(art, formats, args);
  std::cout << "exports in " << args.out_dir << "\n";
}

// ---- prototype ----

struct PrototypeArgs {
  std::string run_dir;
  std::string out_dir;
  ThresholdOptions threshold;
  int jobs = 1;
};

void run_prototype(const PrototypeArgs& args) {
  const auto runs = read_run_dir(args.run_dir);
  if (runs.run_count() < 50)
    std::cerr << "note: only " << runs.run_count()
              << " replications; at least 50 are recommended for a stable prototype\n";
  const auto result = mean_similarity_matrix(runs, args.threshold.config(),
                                             args.threshold.measure_enum(),
                                             args.threshold.ranked_words, args.jobs);
  ensure_dir(args.out_dir);
  const fs::path out(args.out_dir);
  write_pairwise_csv(result, out / "pairwise.csv");
  write_means_csv(result, out / "means.csv");

  char stem[32];
  std::snprintf(stem, sizeof(stem), "run_%04d", result.prototype_index + 1);
  const fs::path src_dir(args.run_dir);
  for (const char* ext : {".csv", ".json"}) {
    std::error_code ec;
    fs::copy_file(src_dir / (std::string(stem) + ext), out / (std::string("prototype") + ext),
                  fs::copy_options::overwrite_existing, ec);
    if (ec)
      throw IoError("cannot copy prototype artifact: " + ec.message());
  }
  if (!result.tie_note.empty()) std::cerr << "note: " << result.tie_note << "\n";
  std::cout << "prototype: run " << (result.prototype_index + 1) << " (mean similarity "
            << format_score(result.mean_similarity[static_cast<std::size_t>(result.prototype_index)])
            << ")\n"
            << "artifacts in " << args.out_dir << "\n";
}

// ---- study ----

struct StudyArgs {
  std::string corpus_file;
  std::string out_dir;
  std::int32_t sets = 20;
  std::int32_t runs = 10;
  std::string sizes = "5,10";
  std::int32_t topics = 10;
  double alpha = -1.0;
  double beta = -1.0;
  std::int32_t iterations = 100;
  std::uint64_t seed = 0;
  ThresholdOptions threshold;
  int jobs = 1;
};

void run_study(const StudyArgs& args) {
  const auto corpus = read_corpus_json(args.corpus_file);
  std::vector<std::int32_t> sizes;
  for (const auto& item : split_list(args.sizes)) sizes.push_back(std::stoi(item));
  if (sizes.empty()) throw std::invalid_argument("study: at least one subsample size required");

  LdaConfig cfg;
  cfg.topics = args.topics;
  cfg.alpha = args.alpha > 0.0 ? args.alpha : 1.0 / static_cast<double>(args.topics);
  cfg.beta = args.beta > 0.0 ? args.beta : 1.0 / static_cast<double>(args.topics);
  cfg.iterations = args.iterations;

  SplitMix64 stream(args.seed);
  std::vector<std::uint64_t> set_seeds(static_cast<std::size_t>(args.sets));
  for (auto& s : set_seeds) s = stream.next();
  const auto study_seed = stream.next();

  std::vector<RunSet> sets;
  sets.reserve(set_seeds.size());
  for (std::int32_t s = 0; s < args.sets; ++s) {
    sets.push_back(replicate(corpus, cfg, args.runs, set_seeds[static_cast<std::size_t>(s)],
                             args.jobs));
    std::cerr << "fitted set " << (s + 1) << "/" << args.sets << "\r";
  }
  std::cerr << "\n";

  const auto result = subsample_study(sets, sizes, study_seed, args.threshold.config(),
                                      args.threshold.measure_enum(), args.threshold.ranked_words,
                                      args.jobs);
  ensure_dir(args.out_dir);
  const fs::path out(args.out_dir);
  write_study_csv(result, out / "study.csv");

  std::vector<EcdfCurve> curves;
  for (const auto size : sizes) {
    curves.push_back({"raw n=" + std::to_string(size), result.samples(size, false)});
    curves.push_back({"prototype n=" + std::to_string(size), result.samples(size, true)});
  }
  write_text_file(ecdf_svg(curves), out / "ecdf.svg");

  for (const auto size : sizes) {
    const auto proto = result.samples(size, true);
    double mean = 0.0;
    for (const auto v : proto) mean += v;
    mean /= static_cast<double>(proto.size());
    std::cout << "size " << size << ": mean prototype similarity " << format_score(mean) << "\n";
  }
  std::cout << "study artifacts in " << args.out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability analysis for replicated topic models: S-CLOP scoring,"
               " dendrogram pruning and prototype selection"};
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* cmd_pre = app.add_subcommand("preprocess", "Clean raw documents into a corpus file");
  cmd_pre->add_option("--input", pre.input, "Directory of .txt files or a JSONL file")->required();
  cmd_pre->add_option("--output", pre.output, "Corpus JSON to write")->required();
  cmd_pre->add_option("--stopwords", pre.stopword_file, "Stopword list, one word per line");
  cmd_pre->add_option("--report", pre.report_file, "Filter report path (default: <output>.report.json)");
  cmd_pre->add_option("--min-count", pre.min_count, "Drop words with a lower corpus-wide count")
      ->capture_default_str();
  cmd_pre->add_flag("--keep-case", pre.keep_case, "Skip lowercasing");
  cmd_pre->add_flag("--keep-numbers", pre.keep_numbers, "Keep digit characters");
  cmd_pre->add_flag("--keep-punctuation", pre.keep_punctuation, "Keep punctuation characters");
  cmd_pre->add_flag("--no-dedup", pre.no_dedup, "Keep exact-text duplicates");
  cmd_pre->callback([&pre] { run_preprocess(pre); });

  SynthArgs synth;
  auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic corpus for demos and tests");
  cmd_synth->add_option("--output", synth.output, "Corpus JSON to write")->required();
  cmd_synth->add_option("--true-topics", synth.spec.true_topics, "Planted topic count")->capture_default_str();
  cmd_synth->add_option("--vocab", synth.spec.vocab_size, "Vocabulary size")->capture_default_str();
  cmd_synth->add_option("--docs", synth.spec.docs, "Document count")->capture_default_str();
  cmd_synth->add_option("--doc-length", synth.spec.doc_length, "Tokens per document")->capture_default_str();
  cmd_synth->add_option("--concentration", synth.spec.topic_concentration,
                        "Weight factor of a document's own topic block")->capture_default_str();
  cmd_synth->add_option("--noise", synth.spec.noise_rate, "Share of uniformly random tokens")
      ->capture_default_str();
  cmd_synth->add_option("--seed", synth.spec.seed, "Generator seed")->capture_default_str();
  cmd_synth->callback([&synth] { run_synth(synth); });

  FitArgs fit;
  auto* cmd_fit = app.add_subcommand("fit", "Fit replicated topic models on a corpus");
  cmd_fit->add_option("--corpus", fit.corpus_file, "Corpus JSON")->required();
  cmd_fit->add_option("--out-dir", fit.out_dir, "Directory for run artifacts")->required();
  cmd_fit->add_option("--topics,--k", fit.topics, "Topics per model")->capture_default_str();
  cmd_fit->add_option("--alpha", fit.alpha, "Document-topic Dirichlet parameter (default 1/K)");
  cmd_fit->add_option("--beta", fit.beta, "Topic-word Dirichlet parameter (default 1/K)");
  cmd_fit->add_option("--iterations", fit.iterations, "Sampler sweeps")->capture_default_str();
  cmd_fit->add_option("--reps", fit.reps, "Number of replicated runs")->capture_default_str();
  cmd_fit->add_option("--seed", fit.seed, "Master seed; per-run seeds derive from it")
      ->capture_default_str();
  add_jobs_option(cmd_fit, &fit.jobs);
  cmd_fit->callback([&fit] { run_fit(fit); });

  ScoreArgs score;
  auto* cmd_sclop = app.add_subcommand("sclop", "Score the stability of a run directory");
  cmd_sclop->add_option("--runs", score.run_dir, "Directory of run artifacts")->required();
  cmd_sclop->add_option("--out-dir", score.out_dir, "Directory for the report and exports")->required();
  add_threshold_options(cmd_sclop, &score.threshold);
  cmd_sclop->add_option("--export", score.export_formats,
                        "Comma list of newick,dot,svg,similarity,topwords")
      ->capture_default_str();
  cmd_sclop->add_option("--top-words", score.top_words_count,
                        "Write the n most important words per topic");
  add_jobs_option(cmd_sclop, &score.jobs);
  cmd_sclop->callback([&score] { run_sclop(score); });

  ScoreArgs exp;
  exp.export_formats = "newick,dot,svg,similarity";
  exp.top_words_count = 20;
  auto* cmd_export = app.add_subcommand("export", "Write dendrogram and similarity artifacts only");
  cmd_export->add_option("--runs", exp.run_dir, "Directory of run artifacts")->required();
  cmd_export->add_option("--out-dir", exp.out_dir, "Directory for the exports")->required();
  add_threshold_options(cmd_export, &exp.threshold);
  cmd_export->add_option("--formats", exp.export_formats,
                         "Comma list of newick,dot,svg,similarity,topwords")
      ->capture_default_str();
  cmd_export->add_option("--top-words", exp.top_words_count,
                         "Words per topic for the topwords format")->capture_default_str();
  add_jobs_option(cmd_export, &exp.jobs);
  cmd_export->callback([&exp] { run_export(exp); });

  PrototypeArgs proto;
  auto* cmd_proto = app.add_subcommand("prototype", "Select the most representative run");
  cmd_proto->add_option("--runs", proto.run_dir, "Directory of run artifacts")->required();
  cmd_proto->add_option("--out-dir", proto.out_dir, "Directory for the selection artifacts")->required();
  add_threshold_options(cmd_proto, &proto.threshold);
  add_jobs_option(cmd_proto, &proto.jobs);
  cmd_proto->callback([&proto] { run_prototype(proto); });

  StudyArgs study;
  auto* cmd_study = app.add_subcommand("study", "Subsample replication study with ECDF output");
  cmd_study->add_option("--corpus", study.corpus_file, "Corpus JSON")->required();
  cmd_study->add_option("--out-dir", study.out_dir, "Directory for study artifacts")->required();
  cmd_study->add_option("--sets", study.sets, "Number of replication sets")->capture_default_str();
  cmd_study->add_option("--runs", study.runs, "Runs per set")->capture_default_str();
  cmd_study->add_option("--sizes", study.sizes, "Comma list of subsample sizes")->capture_default_str();
  cmd_study->add_option("--topics,--k", study.topics, "Topics per model")->capture_default_str();
  cmd_study->add_option("--alpha", study.alpha, "Document-topic Dirichlet parameter (default 1/K)");
  cmd_study->add_option("--beta", study.beta, "Topic-word Dirichlet parameter (default 1/K)");
  cmd_study->add_option("--iterations", study.iterations, "Sampler sweeps")->capture_default_str();
  cmd_study->add_option("--seed", study.seed, "Master seed for fits and subsampling")
      ->capture_default_str();
  add_threshold_options(cmd_study, &study.threshold);
  add_jobs_option(cmd_study, &study.jobs);
  cmd_study->callback([&study] { run_study(study); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
