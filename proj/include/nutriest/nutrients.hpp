#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nutriest/common.hpp"

namespace nutriest {

enum class Nutrient { energy, fat, protein, salt, saturates, sugars };

inline constexpr std::array<Nutrient, 6> kAllNutrients = {
    Nutrient::energy, Nutrient::fat, Nutrient::protein,
    Nutrient::salt, Nutrient::saturates, Nutrient::sugars};

/// The four nutrients the shared task scores, in answer-format order.
inline constexpr std::array<Nutrient, 4> kScoredNutrients = {
    Nutrient::fat, Nutrient::protein, Nutrient::saturates, Nutrient::sugars};

inline std::string_view nutrient_name(Nutrient n) {
  switch (n) {
    case Nutrient::energy: return "energy";
    case Nutrient::fat: return "fat";
    case Nutrient::protein: return "protein";
    case Nutrient::salt: return "salt";
    case Nutrient::saturates: return "saturates";
    case Nutrient::sugars: return "sugars";
  }
  return "?";
}

inline std::optional<Nutrient> nutrient_from_name(std::string_view name) {
  std::string key = text::lower(text::trim(name));
  for (Nutrient n : kAllNutrients) {
    if (key == nutrient_name(n)) return n;
  }
  return std::nullopt;
}

inline Nutrient parse_nutrient(std::string_view name) {
  auto n = nutrient_from_name(name);
  if (!n) throw ArgumentError("unknown nutrient '" + std::string(name) + "'");
  return *n;
}

inline bool is_scored(Nutrient n) {
  return n == Nutrient::fat || n == Nutrient::protein || n == Nutrient::saturates ||
         n == Nutrient::sugars;
}

/// Labeled per-100 g values. Energy and salt units are carried as given.
struct NutrientVector {
  double energy = 0.0;
  double fat = 0.0;
  double protein = 0.0;
  double salt = 0.0;
  double saturates = 0.0;
  double sugars = 0.0;

  double get(Nutrient n) const {
    switch (n) {
      case Nutrient::energy: return energy;
      case Nutrient::fat: return fat;
      case Nutrient::protein: return protein;
      case Nutrient::salt: return salt;
      case Nutrient::saturates: return saturates;
      case Nutrient::sugars: return sugars;
    }
    return 0.0;
  }

  void set(Nutrient n, double v) {
    switch (n) {
      case Nutrient::energy: energy = v; break;
      case Nutrient::fat: fat = v; break;
      case Nutrient::protein: protein = v; break;
      case Nutrient::salt: salt = v; break;
      case Nutrient::saturates: saturates = v; break;
      case Nutrient::sugars: sugars = v; break;
    }
  }

  bool valid() const {
    for (Nutrient n : kAllNutrients) {
      double v = get(n);
      if (!std::isfinite(v) || v < 0.0) return false;
    }
    return true;
  }

  // Data-quality flag only; the corpus contains such rows.
  bool saturates_exceed_fat() const { return saturates > fat; }

  bool operator==(const NutrientVector&) const = default;
};

/// Model output for the four scored nutrients, g per 100 g.
struct NutrientPrediction {
  double fat = 0.0;
  double protein = 0.0;
  double saturates = 0.0;
  double sugars = 0.0;

  double get(Nutrient n) const {
    switch (n) {
      case Nutrient::fat: return fat;
      case Nutrient::protein: return protein;
      case Nutrient::saturates: return saturates;
      case Nutrient::sugars: return sugars;
      default: throw ArgumentError("nutrient '" + std::string(nutrient_name(n)) + "' is not predicted");
    }
  }

  void set(Nutrient n, double v) {
    switch (n) {
      case Nutrient::fat: fat = v; break;
      case Nutrient::protein: protein = v; break;
      case Nutrient::saturates: saturates = v; break;
      case Nutrient::sugars: sugars = v; break;
      default: throw ArgumentError("nutrient '" + std::string(nutrient_name(n)) + "' is not predicted");
    }
  }

  bool valid() const {
    for (Nutrient n : kScoredNutrients) {
      double v = get(n);
      if (!std::isfinite(v) || v < 0.0) return false;
    }
    return true;
  }

  static NutrientPrediction from_labels(const NutrientVector& v) {
    return {v.fat, v.protein, v.saturates, v.sugars};
  }

  bool operator==(const NutrientPrediction&) const = default;
};

using PredictionMap = std::map<std::string, NutrientPrediction>;

namespace detail {

struct KeyValueHit {
  std::string key;
  double value = 0.0;
  size_t position = 0;
};

/// Finds every "key - number" occurrence for the given lowercase keys. A key
/// must be a whole alphabetic word (case-insensitive); between key and dash
/// only whitespace or '*' (markdown emphasis) may appear. A key followed by a
/// dash and then something that is not a number is a ParseError when
/// `strict`, otherwise that occurrence is skipped.
inline std::vector<KeyValueHit> scan_key_values(std::string_view body,
                                                std::span<const std::string_view> keys,
                                                bool strict = true) {
  std::vector<KeyValueHit> hits;
  auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
  size_t i = 0;
  while (i < body.size()) {
    if (!is_alpha(body[i])) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < body.size() && is_alpha(body[i])) ++i;
    std::string word = text::lower(body.substr(start, i - start));
    if (std::find(keys.begin(), keys.end(), word) == keys.end()) continue;

    size_t j = i;
    while (j < body.size() && (text::is_space(body[j]) || body[j] == '*')) ++j;
    if (j >= body.size() || body[j] != '-') continue;
    ++j;
    while (j < body.size() && (text::is_space(body[j]) || body[j] == '*')) ++j;

    size_t num_start = j;
    while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
    if (j < body.size() && body[j] == '.' && j + 1 < body.size() &&
        std::isdigit(static_cast<unsigned char>(body[j + 1]))) {
      ++j;
      while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
    }
    if (j == num_start) {
      if (strict) throw ParseError("non-numeric value for '" + word + "'");
      continue;
    }
    hits.push_back({word, text::parse_double(body.substr(num_start, j - num_start)), start});
    i = j;
  }
  return hits;
}

}  // namespace detail

/// Answer line for the four scored nutrients, two decimals each:
/// "Nutrient values per 100 g: fat - F, protein - P, saturates - SA, sugars - SU".
inline std::string render_prediction_answer(const NutrientPrediction& p) {
  return "Nutrient values per 100 g: fat - " + text::format_fixed2(p.fat) +
         ", protein - " + text::format_fixed2(p.protein) +
         ", saturates - " + text::format_fixed2(p.saturates) +
         ", sugars - " + text::format_fixed2(p.sugars);
}

inline nlohmann::json prediction_to_json(const std::string& id, const NutrientPrediction& p) {
  return {{"id", id}, {"fat", p.fat}, {"protein", p.protein}, {"saturates", p.saturates},
          {"sugars", p.sugars}};
}

/// One record of the prediction interchange file.
struct IdPrediction {
  std::string id;
  NutrientPrediction prediction;
};

inline std::vector<IdPrediction> parse_predictions_jsonl(std::string_view contents) {
  std::vector<IdPrediction> out;
  size_t record = 0;
  for (const auto& line : text::nonblank_lines(contents)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("prediction record " + std::to_string(record) + ": invalid json (" + e.what() + ")");
    }
    if (!j.is_object() || !j.contains("id")) {
      throw ParseError("prediction record " + std::to_string(record) + ": missing field 'id'");
    }
    IdPrediction row;
    row.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    for (Nutrient n : kScoredNutrients) {
      std::string key(nutrient_name(n));
      if (!j.contains(key) || !j[key].is_number()) {
        throw ParseError("prediction record " + std::to_string(record) + ": missing numeric field '" + key + "'");
      }
      row.prediction.set(n, j[key].get<double>());
    }
    out.push_back(std::move(row));
    ++record;
  }
  return out;
}

inline std::vector<IdPrediction> read_predictions(const std::string& path) {
  return parse_predictions_jsonl(text::read_file(path));
}

inline std::string render_predictions_jsonl(std::span<const IdPrediction> rows) {
  std::string out;
  for (const auto& row : rows) {
    out += prediction_to_json(row.id, row.prediction).dump();
    out += '\n';
  }
  return out;
}

inline void write_predictions(const std::string& path, std::span<const IdPrediction> rows) {
  text::write_file(path, render_predictions_jsonl(rows));
}

inline PredictionMap to_map(std::span<const IdPrediction> rows) {
  PredictionMap out;
  for (const auto& row : rows) {
    if (!out.emplace(row.id, row.prediction).second) {
      throw ArgumentError("duplicate prediction id '" + row.id + "'");
    }
  }
  return out;
}

}  // namespace nutriest
