#pragma once

// TF-IDF features: word 1-2-grams plus word-boundary character n-grams,
// concatenated into one sparse vector per recipe.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nutriest/common.hpp"
#include "nutriest/stopwords.hpp"

namespace nutriest::features {

enum class AnalyzerMode { word, char_wb };

inline std::string_view mode_name(AnalyzerMode m) { return m == AnalyzerMode::word ? "word" : "char_wb"; }

inline AnalyzerMode parse_mode(std::string_view s) {
  if (s == "word") return AnalyzerMode::word;
  if (s == "char_wb") return AnalyzerMode::char_wb;
  throw ArgumentError("unknown analyzer mode '" + std::string(s) + "'");
}

struct VectorizerConfig {
  AnalyzerMode mode = AnalyzerMode::word;
  int ngram_min = 1;
  int ngram_max = 1;
  int min_df = 1;         // absolute document count
  double max_df = 1.0;    // fraction of documents
  size_t max_features = 1000000;
  bool sublinear_tf = false;
  bool remove_stopwords = false;  // word mode only
  bool lowercase = true;

  void validate() const {
    if (ngram_min < 1 || ngram_max < ngram_min) throw ArgumentError("invalid n-gram range");
    if (min_df < 1) throw ArgumentError("min_df must be >= 1");
    if (!(max_df > 0.0 && max_df <= 1.0)) throw ArgumentError("max_df must lie in (0, 1]");
    if (max_features < 1) throw ArgumentError("max_features must be >= 1");
  }

  nlohmann::json to_json() const {
    return {{"mode", mode_name(mode)},       {"ngram_min", ngram_min},
            {"ngram_max", ngram_max},        {"min_df", min_df},
            {"max_df", max_df},              {"max_features", max_features},
            {"sublinear_tf", sublinear_tf},  {"remove_stopwords", remove_stopwords},
            {"lowercase", lowercase}};
  }

  /// Missing keys keep the values already in `base`.
  static VectorizerConfig from_json(const nlohmann::json& j) { return from_json(j, VectorizerConfig{}); }

  static VectorizerConfig from_json(const nlohmann::json& j, VectorizerConfig base) {
    try {
      if (j.contains("mode")) base.mode = parse_mode(j.at("mode").get<std::string>());
      if (j.contains("ngram_min")) base.ngram_min = j.at("ngram_min").get<int>();
      if (j.contains("ngram_max")) base.ngram_max = j.at("ngram_max").get<int>();
      if (j.contains("min_df")) base.min_df = j.at("min_df").get<int>();
      if (j.contains("max_df")) base.max_df = j.at("max_df").get<double>();
      if (j.contains("max_features")) base.max_features = j.at("max_features").get<size_t>();
      if (j.contains("sublinear_tf")) base.sublinear_tf = j.at("sublinear_tf").get<bool>();
      if (j.contains("remove_stopwords")) base.remove_stopwords = j.at("remove_stopwords").get<bool>();
      if (j.contains("lowercase")) base.lowercase = j.at("lowercase").get<bool>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("vectorizer config: ") + e.what());
    }
    base.validate();
    return base;
  }

  bool operator==(const VectorizerConfig&) const = default;
};

/// Word level: unigrams + bigrams, min_df 2, max_df 0.9, 8,000 features,
/// sublinear tf, English stop words removed.
inline VectorizerConfig default_word_config() {
  return {AnalyzerMode::word, 1, 2, 2, 0.9, 8000, true, true, true};
}

/// Character level: 3-5 char_wb grams, min_df 2, max_df 0.95, 12,000 features.
inline VectorizerConfig default_char_config() {
  return {AnalyzerMode::char_wb, 3, 5, 2, 0.95, 12000, true, false, true};
}

namespace detail {

/// Splits UTF-8 into code points (each as its byte sequence). Invalid lead
/// bytes are kept as single-byte units.
inline std::vector<std::string_view> utf8_units(std::string_view s) {
  std::vector<std::string_view> out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    size_t len = 1;
    if (c >= 0xF0 && c < 0xF8) len = 4;
    else if (c >= 0xE0) len = c < 0xF0 ? 3 : 1;
    else if (c >= 0xC0) len = 2;
    if (i + len > s.size()) len = 1;
    for (size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

inline bool is_word_unit(std::string_view unit) {
  if (unit.size() > 1) return true;  // non-ASCII letters count as word characters
  return std::isalnum(static_cast<unsigned char>(unit[0])) != 0;
}

inline std::string maybe_lower(std::string_view s, bool lowercase) {
  return lowercase ? text::lower(s) : std::string(s);
}

}  // namespace detail

/// Tokens are maximal runs of at least two alphanumeric characters. Stop
/// words are dropped before n-grams are formed; n-grams join with one space.
inline std::vector<std::string> tokenize_words(std::string_view doc, const VectorizerConfig& config) {
  if (config.mode != AnalyzerMode::word) throw ArgumentError("tokenize_words requires word mode");
  std::string body = detail::maybe_lower(doc, config.lowercase);
  auto units = detail::utf8_units(body);

  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < units.size()) {
    if (!detail::is_word_unit(units[i])) {
      ++i;
      continue;
    }
    size_t start = i;
    std::string tok;
    while (i < units.size() && detail::is_word_unit(units[i])) tok += units[i++];
    if (i - start < 2) continue;
    if (config.remove_stopwords && is_stopword(tok)) continue;
    tokens.push_back(std::move(tok));
  }

  std::vector<std::string> out;
  for (int n = config.ngram_min; n <= config.ngram_max; ++n) {
    auto len = static_cast<size_t>(n);
    if (tokens.size() < len) break;
    for (size_t s = 0; s + len <= tokens.size(); ++s) {
      std::string gram = tokens[s];
      for (size_t k = 1; k < len; ++k) {
        gram.push_back(' ');
        gram += tokens[s + k];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

/// Character n-grams inside space-padded words. A padded word no longer than
/// n contributes itself once and ends enumeration for that word, so a short
/// word is counted once over the whole n range.
inline std::vector<std::string> char_wb_ngrams(std::string_view doc, const VectorizerConfig& config) {
  if (config.mode != AnalyzerMode::char_wb) throw ArgumentError("char_wb_ngrams requires char_wb mode");
  std::string body = detail::maybe_lower(doc, config.lowercase);
  std::vector<std::string> out;
  for (const auto& word : text::split_whitespace(body)) {
    auto units = detail::utf8_units(word);
    std::vector<std::string_view> padded;
    padded.reserve(units.size() + 2);
    padded.push_back(" ");
    padded.insert(padded.end(), units.begin(), units.end());
    padded.push_back(" ");

    for (int n = config.ngram_min; n <= config.ngram_max; ++n) {
      auto len = static_cast<size_t>(n);
      if (padded.size() <= len) {
        std::string whole;
        for (auto u : padded) whole += u;
        out.push_back(std::move(whole));
        break;
      }
      for (size_t s = 0; s + len <= padded.size(); ++s) {
        std::string gram;
        for (size_t k = 0; k < len; ++k) gram += padded[s + k];
        out.push_back(std::move(gram));
      }
    }
  }
  return out;
}

inline std::vector<std::string> analyze(std::string_view doc, const VectorizerConfig& config) {
  return config.mode == AnalyzerMode::word ? tokenize_words(doc, config) : char_wb_ngrams(doc, config);
}

/// Sorted sparse vector. Entries are non-zero and indices < dim.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;
  size_t dim = 0;

  size_t nnz() const { return indices.size(); }

  double squared_norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s;
  }

  double dot(std::span<const double> dense) const {
    double s = 0.0;
    for (size_t k = 0; k < indices.size(); ++k) s += values[k] * dense[indices[k]];
    return s;
  }

  double at(std::uint32_t index) const {
    auto it = std::lower_bound(indices.begin(), indices.end(), index);
    return it != indices.end() && *it == index ? values[static_cast<size_t>(it - indices.begin())] : 0.0;
  }

  bool is_valid() const {
    if (indices.size() != values.size()) return false;
    for (size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] >= dim || !std::isfinite(values[k]) || values[k] == 0.0) return false;
      if (k > 0 && indices[k] <= indices[k - 1]) return false;
    }
    return true;
  }

  static SparseVector from_dense(std::span<const double> dense) {
    SparseVector v;
    v.dim = dense.size();
    for (size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] != 0.0) {
        v.indices.push_back(static_cast<std::uint32_t>(i));
        v.values.push_back(dense[i]);
      }
    }
    return v;
  }

  bool operator==(const SparseVector&) const = default;
};

class Vocabulary {
 public:
  Vocabulary() = default;

  /// `terms` in column order; idf matching.
  Vocabulary(VectorizerConfig config, std::vector<std::string> terms, std::vector<double> idf, size_t n_docs)
      : config_(std::move(config)), terms_(std::move(terms)), idf_(std::move(idf)), n_docs_(n_docs) {
    if (terms_.size() != idf_.size()) throw LoadError("vocabulary: term and idf counts differ");
    if (terms_.size() > config_.max_features) throw LoadError("vocabulary larger than max_features");
    index_.reserve(terms_.size());
    for (size_t i = 0; i < terms_.size(); ++i) {
      if (!(idf_[i] > 0.0) || !std::isfinite(idf_[i])) throw LoadError("vocabulary: idf must be positive");
      if (!index_.emplace(terms_[i], static_cast<std::uint32_t>(i)).second) {
        throw LoadError("vocabulary: duplicate term '" + terms_[i] + "'");
      }
    }
  }

  const VectorizerConfig& config() const { return config_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<double>& idf() const { return idf_; }
  size_t n_docs() const { return n_docs_; }
  size_t size() const { return terms_.size(); }

  std::optional<std::uint32_t> index_of(const std::string& term) const {
    auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  double idf_of(const std::string& term) const {
    auto i = index_of(term);
    if (!i) throw LookupError("term not in vocabulary: '" + term + "'");
    return idf_[*i];
  }

  static constexpr int kFormatVersion = 1;

  nlohmann::json to_json() const {
    nlohmann::json t2i = nlohmann::json::object();
    for (size_t i = 0; i < terms_.size(); ++i) t2i[terms_[i]] = i;
    return {{"format_version", kFormatVersion}, {"config", config_.to_json()},
            {"term_to_index", t2i}, {"idf", idf_}, {"n_docs", n_docs_}};
  }

  static Vocabulary from_json(const nlohmann::json& j) {
    try {
      if (j.at("format_version").get<int>() != kFormatVersion) {
        throw LoadError("vocabulary: unsupported format_version " + j.at("format_version").dump());
      }
      auto config = VectorizerConfig::from_json(j.at("config"));
      auto idf = j.at("idf").get<std::vector<double>>();
      std::vector<std::string> terms(idf.size());
      std::vector<bool> filled(idf.size(), false);
      for (const auto& [term, index] : j.at("term_to_index").items()) {
        auto i = index.get<size_t>();
        if (i >= terms.size() || filled[i]) throw LoadError("vocabulary: column indices are not dense");
        terms[i] = term;
        filled[i] = true;
      }
      if (std::find(filled.begin(), filled.end(), false) != filled.end()) {
        throw LoadError("vocabulary: column indices are not dense");
      }
      return Vocabulary(config, std::move(terms), std::move(idf), j.at("n_docs").get<size_t>());
    } catch (const nlohmann::json::exception& e) {
      throw LoadError(std::string("vocabulary: ") + e.what());
    } catch (const ParseError& e) {
      throw LoadError(e.what());
    }
  }

 private:
  VectorizerConfig config_;
  std::vector<std::string> terms_;
  std::vector<double> idf_;
  size_t n_docs_ = 0;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// idf(t) = ln((1 + n_docs) / (1 + df)) + 1.
inline double smooth_idf(size_t n_docs, size_t df) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

/// Keeps terms with min_df <= df and df / n_docs <= max_df, then the
/// max_features terms with the highest total count (ties: lexicographic).
/// Retained terms get columns in lexicographic order.
inline Vocabulary fit(std::span<const std::string> corpus, const VectorizerConfig& config) {
  config.validate();
  if (corpus.empty()) throw ArgumentError("cannot fit a vocabulary on an empty corpus");

  struct Stats {
    size_t df = 0;
    size_t count = 0;
  };
  std::unordered_map<std::string, Stats> stats;
  for (const auto& doc : corpus) {
    auto terms = analyze(doc, config);
    std::sort(terms.begin(), terms.end());
    for (size_t i = 0; i < terms.size();) {
      size_t j = i;
      while (j < terms.size() && terms[j] == terms[i]) ++j;
      auto& s = stats[terms[i]];
      s.df += 1;
      s.count += j - i;
      i = j;
    }
  }

  const double n_docs = static_cast<double>(corpus.size());
  std::vector<std::pair<std::string, Stats>> kept;
  for (auto& [term, s] : stats) {
    if (s.df < static_cast<size_t>(config.min_df)) continue;
    if (static_cast<double>(s.df) / n_docs > config.max_df) continue;
    kept.emplace_back(term, s);
  }
  if (kept.empty()) throw FitError("no terms survive the document-frequency filters");

  if (kept.size() > config.max_features) {
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
      if (a.second.count != b.second.count) return a.second.count > b.second.count;
      return a.first < b.first;
    });
    kept.resize(config.max_features);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::string> terms;
  std::vector<double> idf;
  terms.reserve(kept.size());
  idf.reserve(kept.size());
  for (auto& [term, s] : kept) {
    terms.push_back(term);
    idf.push_back(smooth_idf(corpus.size(), s.df));
  }
  return Vocabulary(config, std::move(terms), std::move(idf), corpus.size());
}

/// tf-idf weights (1 + ln tf when sublinear), L2-normalized unless all zero.
inline SparseVector transform(std::string_view doc, const Vocabulary& vocab) {
  std::vector<std::uint32_t> hits;
  for (const auto& term : analyze(doc, vocab.config())) {
    if (auto i = vocab.index_of(term)) hits.push_back(*i);
  }
  std::sort(hits.begin(), hits.end());

  SparseVector v;
  v.dim = vocab.size();
  for (size_t i = 0; i < hits.size();) {
    size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    auto tf = static_cast<double>(j - i);
    double weight = (vocab.config().sublinear_tf ? 1.0 + std::log(tf) : tf) * vocab.idf()[hits[i]];
    v.indices.push_back(hits[i]);
    v.values.push_back(weight);
    i = j;
  }
  double norm = std::sqrt(v.squared_norm());
  if (norm > 0.0) {
    for (double& x : v.values) x /= norm;
  }
  return v;
}

/// Word vocabulary in columns [0, |word|), character vocabulary after it.
class CombinedVectorizer {
 public:
  CombinedVectorizer() = default;
  CombinedVectorizer(Vocabulary word, Vocabulary chars) : word_(std::move(word)), chars_(std::move(chars)) {
    fingerprint_ = hex64(fnv1a64(to_json().dump()));
  }

  static CombinedVectorizer fit(std::span<const std::string> corpus,
                                const VectorizerConfig& word_config = default_word_config(),
                                const VectorizerConfig& char_config = default_char_config()) {
    if (word_config.mode != AnalyzerMode::word || char_config.mode != AnalyzerMode::char_wb) {
      throw ArgumentError("combined vectorizer needs a word config and a char_wb config");
    }
    return {features::fit(corpus, word_config), features::fit(corpus, char_config)};
  }

  const Vocabulary& word() const { return word_; }
  const Vocabulary& chars() const { return chars_; }
  size_t dim() const { return word_.size() + chars_.size(); }

  /// FNV-1a hash of the serialized vocabularies, as 16 hex digits.
  const std::string& fingerprint() const { return fingerprint_; }

  SparseVector transform(std::string_view doc) const {
    auto w = features::transform(doc, word_);
    auto c = features::transform(doc, chars_);
    SparseVector out;
    out.dim = dim();
    out.indices = std::move(w.indices);
    out.values = std::move(w.values);
    auto offset = static_cast<std::uint32_t>(word_.size());
    for (size_t k = 0; k < c.indices.size(); ++k) {
      out.indices.push_back(c.indices[k] + offset);
      out.values.push_back(c.values[k]);
    }
    return out;
  }

  std::vector<SparseVector> transform_batch(std::span<const std::string> docs,
                                            size_t workers = default_workers()) const {
    std::vector<SparseVector> out(docs.size());
    parallel_for(docs.size(), workers, [&](size_t i) { out[i] = transform(docs[i]); });
    return out;
  }

  nlohmann::json to_json() const {
    return {{"format_version", 1}, {"word", word_.to_json()}, {"char", chars_.to_json()}};
  }

  static CombinedVectorizer from_json(const nlohmann::json& j) {
    try {
      if (j.at("format_version").get<int>() != 1) throw LoadError("combined vectorizer: unsupported format_version");
      return {Vocabulary::from_json(j.at("word")), Vocabulary::from_json(j.at("char"))};
    } catch (const nlohmann::json::exception& e) {
      throw LoadError(std::string("combined vectorizer: ") + e.what());
    }
  }

 private:
  Vocabulary word_;
  Vocabulary chars_;
  std::string fingerprint_;
};

inline SparseVector transform_combined(std::string_view doc, const CombinedVectorizer& cv) {
  return cv.transform(doc);
}

}  // namespace nutriest::features
