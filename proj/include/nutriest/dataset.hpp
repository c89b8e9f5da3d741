#pragma once

// Ingestion of prompt/answer records, label extraction, deduplication and
// reproducible train/validation splitting.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "nutriest/common.hpp"
#include "nutriest/nutrients.hpp"

namespace nutriest::dataset {

struct RawSample {
  std::string id;
  std::string prompt;
  std::optional<std::string> answer;

  bool operator==(const RawSample&) const = default;
};

struct RecipeSample {
  std::string id;
  std::string ingredient_text;
  std::optional<NutrientVector> labels;

  bool operator==(const RecipeSample&) const = default;
};

struct DatasetSplit {
  std::vector<RecipeSample> train;
  std::vector<RecipeSample> validation;
  std::uint64_t seed = 0;
  double ratio = 0.8;
};

enum class RawFormat { jsonl, csv };

inline RawFormat parse_format(std::string_view name) {
  std::string n = text::lower(name);
  if (n == "jsonl" || n == "json-lines" || n == "jsonlines") return RawFormat::jsonl;
  if (n == "csv") return RawFormat::csv;
  throw ArgumentError("unknown input format '" + std::string(name) + "' (expected jsonl or csv)");
}

namespace detail {

inline std::string record_error(size_t record, std::string_view what) {
  return "record " + std::to_string(record) + ": " + std::string(what);
}

inline std::string json_scalar_to_id(const nlohmann::json& v, size_t record) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  throw ParseError(record_error(record, "field 'id' must be a string or integer"));
}

/// RFC-4180 records: fields separated by ',', records by CRLF or LF, fields
/// optionally enclosed in '"' with '""' as an escaped quote.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view data) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  size_t i = 0;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    bool blank = row.size() == 1 && row[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row.clear();
  };

  while (i < data.size()) {
    char c = data[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      field.push_back(c);
      ++i;
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
      ++i;
    } else if (c == ',') {
      end_field();
      ++i;
    } else if (c == '\r' && i + 1 < data.size() && data[i + 1] == '\n') {
      end_row();
      i += 2;
    } else if (c == '\n') {
      end_row();
      ++i;
    } else {
      field.push_back(c);
      field_started = true;
      ++i;
    }
  }
  if (in_quotes) throw ParseError("csv: unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

inline void check_unique_ids(std::span<const RawSample> samples) {
  std::unordered_set<std::string> seen;
  for (size_t r = 0; r < samples.size(); ++r) {
    if (!seen.insert(samples[r].id).second) {
      throw ParseError(record_error(r, "duplicate id '" + samples[r].id + "'"));
    }
  }
}

}  // namespace detail

inline std::vector<RawSample> parse_raw_jsonl(std::string_view contents) {
  std::vector<RawSample> out;
  size_t record = 0;
  for (const auto& line : text::nonblank_lines(contents)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(detail::record_error(record, std::string("invalid json (") + e.what() + ")"));
    }
    if (!j.is_object()) throw ParseError(detail::record_error(record, "not a json object"));

    RawSample s;
    s.id = std::to_string(record);
    if (auto it = j.find("id"); it != j.end() && !it->is_null()) {
      s.id = detail::json_scalar_to_id(*it, record);
    }
    auto prompt = j.find("prompt");
    if (prompt == j.end() || !prompt->is_string()) {
      throw ParseError(detail::record_error(record, "missing string field 'prompt'"));
    }
    s.prompt = prompt->get<std::string>();
    if (s.prompt.empty()) throw ParseError(detail::record_error(record, "field 'prompt' is empty"));
    if (auto it = j.find("answer"); it != j.end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError(detail::record_error(record, "field 'answer' must be a string"));
      s.answer = it->get<std::string>();
    }
    out.push_back(std::move(s));
    ++record;
  }
  detail::check_unique_ids(out);
  return out;
}

inline std::vector<RawSample> parse_raw_csv(std::string_view contents) {
  auto rows = detail::parse_csv(contents);
  if (rows.empty()) return {};
  const auto& header = rows.front();
  std::optional<size_t> id_col;
  std::optional<size_t> prompt_col;
  std::optional<size_t> answer_col;
  for (size_t c = 0; c < header.size(); ++c) {
    std::string name = text::lower(text::trim(header[c]));
    if (c == 0 && name.starts_with("\xEF\xBB\xBF")) name.erase(0, 3);
    if (name == "id") id_col = c;
    if (name == "prompt") prompt_col = c;
    if (name == "answer") answer_col = c;
  }
  if (!prompt_col) throw ParseError("csv: header has no 'prompt' column");

  std::vector<RawSample> out;
  for (size_t r = 1; r < rows.size(); ++r) {
    size_t record = r - 1;
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw ParseError(detail::record_error(record, "expected " + std::to_string(header.size()) +
                                                        " fields, found " + std::to_string(row.size())));
    }
    RawSample s;
    s.id = id_col && !row[*id_col].empty() ? row[*id_col] : std::to_string(record);
    s.prompt = row[*prompt_col];
    if (s.prompt.empty()) throw ParseError(detail::record_error(record, "field 'prompt' is empty"));
    if (answer_col && !row[*answer_col].empty()) s.answer = row[*answer_col];
    out.push_back(std::move(s));
  }
  detail::check_unique_ids(out);
  return out;
}

inline std::vector<RawSample> load_raw(const std::string& path, RawFormat format) {
  std::string contents = text::read_file(path);
  return format == RawFormat::jsonl ? parse_raw_jsonl(contents) : parse_raw_csv(contents);
}

/// Text after the last ':' that follows the first case-insensitive
/// "ingredients", trimmed. Falls back to the whole prompt (trimmed) when the
/// marker is missing or nothing follows the colon.
inline std::string extract_ingredients(std::string_view prompt) {
  std::string lowered = text::lower(prompt);
  size_t marker = lowered.find("ingredients");
  if (marker != std::string::npos) {
    size_t colon = lowered.rfind(':');
    if (colon != std::string::npos && colon > marker) {
      auto tail = text::trim(prompt.substr(colon + 1));
      if (!tail.empty()) return std::string(tail);
    }
  }
  auto whole = text::trim(prompt);
  return whole.empty() ? std::string(prompt) : std::string(whole);
}

inline constexpr std::array<std::string_view, 6> kAnswerKeys = {
    "energy", "fat", "protein", "salt", "saturates", "sugars"};

/// Reads "name - value" pairs for all six nutrients; each key exactly once.
inline NutrientVector parse_answer(std::string_view answer) {
  auto hits = nutriest::detail::scan_key_values(answer, kAnswerKeys);
  NutrientVector v;
  for (auto key : kAnswerKeys) {
    size_t count = 0;
    for (const auto& h : hits) {
      if (h.key == key) {
        v.set(parse_nutrient(key), h.value);
        ++count;
      }
    }
    if (count == 0) throw ParseError("answer is missing nutrient '" + std::string(key) + "'");
    if (count > 1) throw ParseError("answer repeats nutrient '" + std::string(key) + "'");
  }
  return v;
}

inline std::string render_answer(const NutrientVector& v) {
  std::string out = "Nutrient values per 100 g: ";
  for (size_t i = 0; i < kAnswerKeys.size(); ++i) {
    if (i > 0) out += ", ";
    out += kAnswerKeys[i];
    out += " - ";
    out += text::format_fixed2(v.get(parse_nutrient(kAnswerKeys[i])));
  }
  return out;
}

/// Key used to detect duplicate recipes.
inline std::string dedup_key(std::string_view ingredient_text) {
  return text::normalize_spaces_lower(ingredient_text);
}

/// Keeps the first sample per dedup_key, preserving input order.
inline std::vector<RecipeSample> deduplicate(std::span<const RecipeSample> samples) {
  std::unordered_set<std::string> seen;
  std::vector<RecipeSample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    if (seen.insert(dedup_key(s.ingredient_text)).second) out.push_back(s);
  }
  return out;
}

/// SplitMix64 (Steele, Lea & Flood 2014). State advances by 0x9e3779b97f4a7c15
/// per draw; output is the standard xor-shift-multiply finalizer.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Shuffle: for i = n-1 down to 1, swap(i, next() % (i + 1)). Train is the
/// first floor(ratio * n) shuffled samples.
inline DatasetSplit split(std::span<const RecipeSample> samples, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ArgumentError("split ratio must lie in (0, 1), got " + std::to_string(ratio));
  }
  if (samples.size() < 2) throw ArgumentError("split needs at least 2 samples");

  std::vector<RecipeSample> shuffled(samples.begin(), samples.end());
  SplitMix64 rng(seed);
  for (size_t i = shuffled.size() - 1; i >= 1; --i) {
    size_t j = static_cast<size_t>(rng.next() % static_cast<std::uint64_t>(i + 1));
    std::swap(shuffled[i], shuffled[j]);
  }
  auto n_train = static_cast<size_t>(std::floor(ratio * static_cast<double>(shuffled.size())));

  DatasetSplit out;
  out.seed = seed;
  out.ratio = ratio;
  out.train.assign(std::make_move_iterator(shuffled.begin()),
                   std::make_move_iterator(shuffled.begin() + static_cast<std::ptrdiff_t>(n_train)));
  out.validation.assign(std::make_move_iterator(shuffled.begin() + static_cast<std::ptrdiff_t>(n_train)),
                        std::make_move_iterator(shuffled.end()));
  return out;
}

/// Converts raw records to recipe samples. Answers that fail to parse raise
/// ParseError naming the record id.
inline std::vector<RecipeSample> to_recipes(std::span<const RawSample> raw) {
  std::vector<RecipeSample> out;
  out.reserve(raw.size());
  for (const auto& r : raw) {
    RecipeSample s;
    s.id = r.id;
    s.ingredient_text = extract_ingredients(r.prompt);
    if (r.answer) {
      try {
        s.labels = parse_answer(*r.answer);
      } catch (const ParseError& e) {
        throw ParseError("sample '" + r.id + "': " + e.what());
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Canonical json-lines dump: {"id", "ingredient_text", "labels": {six keys}}.

inline nlohmann::json labels_to_json(const NutrientVector& v) {
  nlohmann::json j = nlohmann::json::object();
  for (Nutrient n : kAllNutrients) j[std::string(nutrient_name(n))] = v.get(n);
  return j;
}

inline std::string render_recipes_jsonl(std::span<const RecipeSample> samples) {
  std::string out;
  for (const auto& s : samples) {
    nlohmann::json j = {{"id", s.id}, {"ingredient_text", s.ingredient_text}};
    if (s.labels) j["labels"] = labels_to_json(*s.labels);
    out += j.dump();
    out += '\n';
  }
  return out;
}

inline std::vector<RecipeSample> parse_recipes_jsonl(std::string_view contents) {
  std::vector<RecipeSample> out;
  size_t record = 0;
  std::unordered_set<std::string> ids;
  for (const auto& line : text::nonblank_lines(contents)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(detail::record_error(record, std::string("invalid json (") + e.what() + ")"));
    }
    if (!j.is_object()) throw ParseError(detail::record_error(record, "not a json object"));
    RecipeSample s;
    auto id = j.find("id");
    if (id == j.end()) throw ParseError(detail::record_error(record, "missing field 'id'"));
    s.id = detail::json_scalar_to_id(*id, record);
    auto txt = j.find("ingredient_text");
    if (txt == j.end() || !txt->is_string() || txt->get<std::string>().empty()) {
      throw ParseError(detail::record_error(record, "missing non-empty string field 'ingredient_text'"));
    }
    s.ingredient_text = txt->get<std::string>();
    if (auto lab = j.find("labels"); lab != j.end() && !lab->is_null()) {
      NutrientVector v;
      for (Nutrient n : kAllNutrients) {
        std::string key(nutrient_name(n));
        auto f = lab->find(key);
        if (f == lab->end() || !f->is_number()) {
          throw ParseError(detail::record_error(record, "labels missing numeric field '" + key + "'"));
        }
        v.set(n, f->get<double>());
      }
      if (!v.valid()) throw ParseError(detail::record_error(record, "labels must be finite and non-negative"));
      s.labels = v;
    }
    if (!ids.insert(s.id).second) throw ParseError(detail::record_error(record, "duplicate id '" + s.id + "'"));
    out.push_back(std::move(s));
    ++record;
  }
  return out;
}

inline std::vector<RecipeSample> read_recipes(const std::string& path) {
  return parse_recipes_jsonl(text::read_file(path));
}

inline void write_recipes(const std::string& path, std::span<const RecipeSample> samples) {
  text::write_file(path, render_recipes_jsonl(samples));
}

}  // namespace nutriest::dataset
