#pragma once

// Ingredient line parsing (quantity, unit, name) and gram conversion.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nutriest/common.hpp"

namespace nutriest::ingredients {

/// Exact non-negative rational, always stored in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw ParseError("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  bool operator==(const Rational&) const = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

namespace detail {

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline std::int64_t parse_int(std::string_view s) {
  if (!all_digits(s) || s.size() > 15) throw ParseError("not a quantity: '" + std::string(s) + "'");
  std::int64_t v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

// Unicode vulgar fractions as UTF-8.
inline const std::vector<std::pair<std::string_view, Rational>>& vulgar_fractions() {
  static const std::vector<std::pair<std::string_view, Rational>> table = {
      {"½", Rational(1, 2)}, {"⅓", Rational(1, 3)}, {"⅔", Rational(2, 3)},
      {"¼", Rational(1, 4)}, {"¾", Rational(3, 4)}, {"⅛", Rational(1, 8)},
  };
  return table;
}

inline std::optional<Rational> parse_simple(std::string_view tok) {
  for (const auto& [glyph, value] : vulgar_fractions()) {
    if (tok == glyph) return value;
  }
  if (auto slash = tok.find('/'); slash != std::string_view::npos) {
    auto a = tok.substr(0, slash);
    auto b = tok.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) return std::nullopt;
    return Rational(parse_int(a), parse_int(b));
  }
  if (auto dot = tok.find('.'); dot != std::string_view::npos) {
    auto a = tok.substr(0, dot);
    auto b = tok.substr(dot + 1);
    if ((!a.empty() && !all_digits(a)) || !all_digits(b) || b.size() > 9) return std::nullopt;
    std::int64_t scale = 1;
    for (size_t i = 0; i < b.size(); ++i) scale *= 10;
    return Rational((a.empty() ? 0 : parse_int(a)) * scale + parse_int(b), scale);
  }
  if (all_digits(tok)) return Rational(parse_int(tok));
  std::string lowered = text::lower(tok);
  if (lowered == "a" || lowered == "an") return Rational(1);
  return std::nullopt;
}

}  // namespace detail

/// Integer, decimal, "a/b", mixed "a b/c", a unicode fraction, or "a"/"an".
inline Rational parse_quantity(std::string_view token) {
  auto parts = text::split_whitespace(token);
  if (parts.size() == 1) {
    if (auto q = detail::parse_simple(parts[0])) return *q;
  } else if (parts.size() == 2 && detail::all_digits(parts[0])) {
    auto frac = detail::parse_simple(parts[1]);
    bool is_fraction = parts[1].find('/') != std::string::npos ||
                       std::any_of(detail::vulgar_fractions().begin(), detail::vulgar_fractions().end(),
                                   [&](const auto& e) { return e.first == parts[1]; });
    if (frac && is_fraction) return Rational(detail::parse_int(parts[0])) + *frac;
  }
  throw ParseError("not a quantity: '" + std::string(token) + "'");
}

struct ParsedIngredient {
  Rational quantity{1};
  std::string unit = "unit";
  std::string name;

  bool operator==(const ParsedIngredient&) const = default;
};

/// Lowercase alias -> canonical unit.
inline const std::map<std::string, std::string, std::less<>>& unit_aliases() {
  static const std::map<std::string, std::string, std::less<>> aliases = {
      {"tbsp", "tablespoon"}, {"tbsps", "tablespoon"}, {"tablespoon", "tablespoon"},
      {"tablespoons", "tablespoon"}, {"tsp", "teaspoon"}, {"tsps", "teaspoon"},
      {"teaspoon", "teaspoon"}, {"teaspoons", "teaspoon"}, {"cup", "cup"}, {"cups", "cup"},
      {"ml", "ml"}, {"milliliter", "ml"}, {"milliliters", "ml"}, {"millilitre", "ml"},
      {"millilitres", "ml"}, {"l", "l"}, {"liter", "l"}, {"liters", "l"}, {"litre", "l"},
      {"litres", "l"}, {"g", "g"}, {"gram", "g"}, {"grams", "g"}, {"kg", "kg"},
      {"kilogram", "kg"}, {"kilograms", "kg"}, {"oz", "oz"}, {"ounce", "oz"}, {"ounces", "oz"},
      {"lb", "pound"}, {"lbs", "pound"}, {"pound", "pound"}, {"pounds", "pound"},
      {"pinch", "pinch"}, {"pinches", "pinch"}, {"bunch", "bunch"}, {"bunches", "bunch"},
  };
  return aliases;
}

inline std::optional<std::string> canonical_unit(std::string_view token) {
  std::string t = text::lower(token);
  while (!t.empty() && (t.back() == '.' || t.back() == ',')) t.pop_back();
  auto it = unit_aliases().find(t);
  if (it == unit_aliases().end()) return std::nullopt;
  return it->second;
}

/// Leading quantity, then an optional unit (size adjectives such as "medium"
/// before the unit are skipped, as is "of" after it), then the name. Lines
/// without a leading quantity become {1, "unit", whole line}.
inline ParsedIngredient parse_ingredient(std::string_view line) {
  std::string trimmed(text::trim(line));
  ParsedIngredient fallback{Rational(1), "unit", trimmed.empty() ? std::string(line) : trimmed};
  auto tokens = text::split_whitespace(trimmed);
  if (tokens.empty()) return fallback;

  size_t pos = 0;
  std::optional<Rational> quantity;
  if (tokens.size() >= 2) {
    try {
      quantity = parse_quantity(tokens[0] + " " + tokens[1]);
      pos = 2;
    } catch (const ParseError&) {
    }
  }
  if (!quantity) {
    try {
      quantity = parse_quantity(tokens[0]);
      pos = 1;
    } catch (const ParseError&) {
      return fallback;
    }
  }

  ParsedIngredient out;
  out.quantity = *quantity;
  size_t unit_pos = pos;
  static constexpr std::array<std::string_view, 4> kSizes = {"small", "medium", "large", "heaping"};
  while (unit_pos < tokens.size() &&
         std::find(kSizes.begin(), kSizes.end(), text::lower(tokens[unit_pos])) != kSizes.end()) {
    ++unit_pos;
  }
  if (unit_pos < tokens.size()) {
    if (auto unit = canonical_unit(tokens[unit_pos])) {
      out.unit = *unit;
      pos = unit_pos + 1;
      if (pos < tokens.size() && text::lower(tokens[pos]) == "of") ++pos;
    }
  }

  std::string name;
  for (size_t i = pos; i < tokens.size(); ++i) {
    if (!name.empty()) name.push_back(' ');
    name += tokens[i];
  }
  if (name.empty()) return fallback;
  out.name = std::move(name);
  return out;
}

/// Splits a comma-joined ingredient list into lines. A new line starts at a
/// comma followed by a quantity token; other commas belong to the current
/// ingredient ("corn, sweet, white, raw").
inline std::vector<std::string> split_ingredient_lines(std::string_view text_list) {
  std::vector<std::string> lines;
  std::string current;
  auto pieces = text::split(text_list, ',');
  for (const auto& raw_piece : pieces) {
    std::string piece(text::trim(raw_piece));
    auto tokens = text::split_whitespace(piece);
    bool starts_quantity = false;
    if (!tokens.empty()) {
      try {
        parse_quantity(tokens[0]);
        starts_quantity = tokens.size() > 1;
      } catch (const ParseError&) {
      }
    }
    if (starts_quantity && !current.empty()) {
      lines.push_back(current);
      current.clear();
    }
    if (piece.empty()) continue;
    if (!current.empty()) current += ", ";
    current += piece;
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

struct DensityEntry {
  std::string unit;
  std::string keyword;
  double grams_per_unit = 0.0;
};

/// Unit -> grams factors. Per-ingredient entries (matched by keyword
/// containment in the lowercase name, longest keyword wins) take precedence
/// over generic ones.
struct ConversionTable {
  std::map<std::string, double> generic;
  std::vector<DensityEntry> per_ingredient;
  std::vector<std::string> placeholders;

  void validate() const {
    for (const auto& [unit, f] : generic) {
      if (!(f > 0.0) || !std::isfinite(f)) throw ArgumentError("conversion factor for '" + unit + "' must be > 0");
    }
    for (const auto& e : per_ingredient) {
      if (!(e.grams_per_unit > 0.0) || !std::isfinite(e.grams_per_unit)) {
        throw ArgumentError("conversion factor for '" + e.unit + "/" + e.keyword + "' must be > 0");
      }
    }
  }

  std::vector<std::string> known_units() const {
    std::vector<std::string> units;
    for (const auto& [u, f] : generic) units.push_back(u);
    for (const auto& e : per_ingredient) {
      if (std::find(units.begin(), units.end(), e.unit) == units.end()) units.push_back(e.unit);
    }
    std::sort(units.begin(), units.end());
    return units;
  }

  static ConversionTable from_json(const nlohmann::json& j) {
    ConversionTable t;
    try {
      for (const auto& [unit, f] : j.at("generic").items()) t.generic[unit] = f.get<double>();
      if (j.contains("per_ingredient")) {
        for (const auto& [unit, entries] : j.at("per_ingredient").items()) {
          for (const auto& [keyword, f] : entries.items()) {
            t.per_ingredient.push_back({unit, text::lower(keyword), f.get<double>()});
          }
        }
      }
      if (j.contains("placeholders")) t.placeholders = j.at("placeholders").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("conversion table: ") + e.what());
    }
    t.validate();
    return t;
  }

  nlohmann::json to_json() const {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& e : per_ingredient) per[e.unit][e.keyword] = e.grams_per_unit;
    return {{"generic", generic}, {"per_ingredient", per}, {"placeholders", placeholders}};
  }

  static ConversionTable load(const std::string& path) {
    try {
      return from_json(nlohmann::json::parse(text::read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("conversion table '" + path + "': " + e.what());
    }
  }
};

/// Built-in table; identical to data/conversions.json.
inline const ConversionTable& default_conversion_table() {
  static const ConversionTable table = ConversionTable::from_json(nlohmann::json::parse(R"({
    "generic": {
      "cup": 236.6, "tablespoon": 14.79, "teaspoon": 4.93, "ml": 1.0, "l": 1000.0,
      "g": 1.0, "kg": 1000.0, "oz": 28.35, "pound": 453.6, "pinch": 0.36, "bunch": 100.0
    },
    "per_ingredient": {
      "tablespoon": {"butter": 14.2},
      "cup": {"butter": 227.0},
      "unit": {"egg": 50.0}
    },
    "placeholders": ["bunch", "unit/egg"]
  })"));
  return table;
}

inline double to_grams(const Rational& quantity, std::string_view unit, std::string_view name,
                       const ConversionTable& table) {
  std::string u = text::lower(unit);
  if (auto c = canonical_unit(u)) u = *c;
  std::string lname = text::lower(name);

  const DensityEntry* best = nullptr;
  for (const auto& e : table.per_ingredient) {
    if (e.unit != u || lname.find(e.keyword) == std::string::npos) continue;
    if (!best || e.keyword.size() > best->keyword.size() ||
        (e.keyword.size() == best->keyword.size() && e.keyword < best->keyword)) {
      best = &e;
    }
  }
  if (best) return quantity.to_double() * best->grams_per_unit;
  if (auto it = table.generic.find(u); it != table.generic.end()) return quantity.to_double() * it->second;

  std::string known;
  for (const auto& k : table.known_units()) {
    if (!known.empty()) known += ", ";
    known += k;
  }
  throw LookupError("no conversion for unit '" + u + "' (name '" + std::string(name) + "'); known units: " + known);
}

struct RecipeMass {
  double grams = 0.0;
  std::vector<std::string> unresolved;
};

inline RecipeMass recipe_mass(std::span<const std::string> lines, const ConversionTable& table) {
  RecipeMass out;
  for (const auto& line : lines) {
    if (text::trim(line).empty()) continue;
    auto parsed = parse_ingredient(line);
    try {
      out.grams += to_grams(parsed.quantity, parsed.unit, parsed.name, table);
    } catch (const LookupError&) {
      out.unresolved.push_back(line);
    }
  }
  return out;
}

}  // namespace nutriest::ingredients
