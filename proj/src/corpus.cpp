#include "sclop/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace sclop {
namespace {

// Decodes the UTF-8 code point starting at s[i]; advances i past it.
// Malformed bytes are consumed one at a time and returned verbatim, so they
// can never be mistaken for whitespace.
char32_t next_codepoint(const std::string& s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((b0 & 0xe0) == 0xc0) {
    extra = 1;
    cp = b0 & 0x1f;
  } else if ((b0 & 0xf0) == 0xe0) {
    extra = 2;
    cp = b0 & 0x0f;
  } else if ((b0 & 0xf8) == 0xf0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    ++i;
    return b0;
  }
  if (i + extra >= s.size()) {
    ++i;
    return b0;
  }
  for (int j = 1; j <= extra; ++j) {
    const auto bj = static_cast<unsigned char>(s[i + j]);
    if ((bj & 0xc0) != 0x80) {
      ++i;
      return b0;
    }
    cp = (cp << 6) | (bj & 0x3f);
  }
  i += 1 + extra;
  return cp;
}

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\v':
    case U'\f':
    case U'\r':
    case 0x0085:  // next line
    case 0x00a0:  // no-break space
    case 0x1680:  // ogham space mark
    case 0x2028:  // line separator
    case 0x2029:  // paragraph separator
    case 0x202f:  // narrow no-break space
    case 0x205f:  // medium mathematical space
    case 0x3000:  // ideographic space
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200a;  // en quad .. hair space
  }
}

bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_ascii_punct(char32_t cp) {
  return cp < 0x80 && std::ispunct(static_cast<int>(cp)) != 0;
}

void append_codepoint(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

}  // namespace

std::int64_t Corpus::total_tokens() const {
  std::int64_t total = 0;
  for (const auto& doc : documents) total += static_cast<std::int64_t>(doc.size());
  return total;
}

const std::string& Corpus::word(std::int32_t token_id) const {
  return vocabulary.at(static_cast<std::size_t>(token_id) - 1);
}

void Corpus::validate() const {
  if (doc_ids.size() != documents.size())
    throw std::runtime_error("corpus: doc_ids and documents out of sync");
  for (std::size_t i = 1; i < vocabulary.size(); ++i) {
    if (!(vocabulary[i - 1] < vocabulary[i]))
      throw std::runtime_error("corpus: vocabulary not sorted and distinct at index " +
                               std::to_string(i));
  }
  const auto v = vocab_size();
  for (std::size_t m = 0; m < documents.size(); ++m) {
    for (const auto id : documents[m]) {
      if (id < 1 || id > v)
        throw std::runtime_error("corpus: token id " + std::to_string(id) +
                                 " out of range in document " + doc_ids[m]);
    }
  }
}

std::vector<RawDocument> deduplicate(const std::vector<RawDocument>& docs,
                                     PreprocessReport* report) {
  std::vector<RawDocument> kept;
  kept.reserve(docs.size());
  std::unordered_set<std::string> seen;
  seen.reserve(docs.size());
  for (const auto& doc : docs) {
    if (seen.insert(doc.text).second) {
      kept.push_back(doc);
    } else if (report != nullptr) {
      report->duplicate_ids.push_back(doc.id);
    }
  }
  return kept;
}

std::vector<std::string> tokenize_words(const std::string& text, const PreprocessConfig& cfg) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = next_codepoint(text, i);
    if (is_unicode_space(cp)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
      continue;
    }
    if (cfg.strip_numbers && is_ascii_digit(cp)) continue;
    if (cfg.strip_punctuation && is_ascii_punct(cp)) continue;
    char32_t out = cp;
    if (cfg.lowercase && cp >= U'A' && cp <= U'Z') out = cp + (U'a' - U'A');
    append_codepoint(current, out);
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Corpus preprocess(const std::vector<RawDocument>& docs, const PreprocessConfig& cfg,
                  PreprocessReport* report) {
  if (cfg.min_word_count < 1)
    throw std::invalid_argument("preprocess: min_word_count must be >= 1");

  PreprocessReport local;
  PreprocessReport& rep = report != nullptr ? *report : local;
  rep.input_docs = static_cast<std::int64_t>(docs.size());

  const std::vector<RawDocument> unique = cfg.deduplicate ? deduplicate(docs, &rep) : docs;
  if (unique.empty()) throw std::invalid_argument("preprocess: no documents after deduplication");

  // Stopword entries pass through the same character cleanup as tokens, so a
  // list with punctuation or mixed case still matches.
  std::unordered_set<std::string> stopwords;
  for (const auto& entry : cfg.stopwords) {
    for (auto& w : tokenize_words(entry, cfg)) stopwords.insert(std::move(w));
  }

  std::int64_t tokens_after_clean = 0;
  std::int64_t tokens_after_stopwords = 0;
  std::vector<std::vector<std::string>> doc_words(unique.size());
  std::unordered_map<std::string, std::int64_t> counts;
  for (std::size_t m = 0; m < unique.size(); ++m) {
    auto words = tokenize_words(unique[m].text, cfg);
    tokens_after_clean += static_cast<std::int64_t>(words.size());
    auto& kept = doc_words[m];
    kept.reserve(words.size());
    for (auto& w : words) {
      if (stopwords.count(w) != 0) continue;
      ++counts[w];
      kept.push_back(std::move(w));
    }
    tokens_after_stopwords += static_cast<std::int64_t>(kept.size());
  }
  rep.vocab_before_min_count = static_cast<std::int64_t>(counts.size());

  std::vector<std::string> vocabulary;
  vocabulary.reserve(counts.size());
  for (const auto& [word, count] : counts) {
    if (count >= cfg.min_word_count) vocabulary.push_back(word);
  }
  std::sort(vocabulary.begin(), vocabulary.end());

  std::unordered_map<std::string, std::int32_t> id_of;
  id_of.reserve(vocabulary.size());
  for (std::size_t i = 0; i < vocabulary.size(); ++i)
    id_of.emplace(vocabulary[i], static_cast<std::int32_t>(i + 1));

  Corpus corpus;
  corpus.vocabulary = std::move(vocabulary);
  for (std::size_t m = 0; m < unique.size(); ++m) {
    std::vector<std::int32_t> ids;
    ids.reserve(doc_words[m].size());
    for (const auto& w : doc_words[m]) {
      const auto it = id_of.find(w);
      if (it != id_of.end()) ids.push_back(it->second);
    }
    if (ids.empty()) {
      rep.empty_doc_ids.push_back(unique[m].id);
      continue;
    }
    corpus.doc_ids.push_back(unique[m].id);
    corpus.documents.push_back(std::move(ids));
  }

  if (corpus.documents.empty()) {
    const char* stage = "minimum word count filter";
    if (tokens_after_clean == 0)
      stage = "number/punctuation stripping";
    else if (tokens_after_stopwords == 0)
      stage = "stopword removal";
    throw std::runtime_error(std::string("preprocess: all documents empty after ") + stage);
  }

  rep.vocab_size = corpus.vocab_size();
  rep.total_tokens = corpus.total_tokens();
  return corpus;
}

std::uint64_t corpus_hash(const Corpus& corpus) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64 offset basis
  const auto mix_byte = [&h](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ull;
  };
  const auto mix_string = [&](const std::string& s) {
    for (const char c : s) mix_byte(static_cast<unsigned char>(c));
    mix_byte(0);
  };
  const auto mix_u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) mix_byte(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
  };

  mix_u32(static_cast<std::uint32_t>(corpus.vocabulary.size()));
  for (const auto& w : corpus.vocabulary) mix_string(w);
  mix_u32(static_cast<std::uint32_t>(corpus.documents.size()));
  for (std::size_t m = 0; m < corpus.documents.size(); ++m) {
    mix_string(corpus.doc_ids[m]);
    mix_u32(static_cast<std::uint32_t>(corpus.documents[m].size()));
    for (const auto id : corpus.documents[m]) mix_u32(static_cast<std::uint32_t>(id));
  }
  return h;
}

std::string corpus_hash_hex(const Corpus& corpus) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(corpus_hash(corpus)));
  return std::string(buf);
}

}  // namespace sclop
