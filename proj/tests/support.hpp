#pragma once

// Shared test helpers: scratch directories and a synthetic recipe corpus whose
// labels are the mass-weighted profile of the ingredients each recipe lists.

#include <array>
#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>
#include <cmath>

#include "nutriest/dataset.hpp"
#include "nutriest/nutrients.hpp"

namespace testing_support {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("nutriest_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct SyntheticIngredient {
  const char* name;
  std::array<double, 6> per100;  // energy, fat, protein, salt, saturates, sugars
};

inline const std::vector<SyntheticIngredient>& synthetic_ingredients() {
  static const std::vector<SyntheticIngredient> items = {
      {"butter, without salt", {717, 81.1, 0.85, 0.03, 51.4, 0.06}},
      {"wheat flour, white, all-purpose", {364, 0.98, 10.3, 0.01, 0.16, 0.27}},
      {"sugars, granulated", {387, 0, 0, 0.0, 0, 99.8}},
      {"olive oil, extra virgin", {884, 100, 0, 0.0, 13.8, 0}},
      {"egg, whole, raw, fresh", {143, 9.5, 12.6, 0.36, 3.1, 0.37}},
      {"milk, whole, 3.25% milkfat", {61, 3.3, 3.2, 0.11, 1.9, 5.05}},
      {"chicken breast, skinless, raw", {120, 2.6, 22.5, 0.12, 0.56, 0}},
      {"corn, sweet, white, raw", {86, 1.35, 3.27, 0.04, 0.33, 6.26}},
      {"soy sauce made from soy (tamari)", {60, 0.1, 10.5, 14.2, 0.01, 1.7}},
      {"peanut butter, smooth style, without salt", {598, 51.4, 22.2, 0.04, 10.3, 10.5}},
      {"rice, white, long-grain, cooked", {130, 0.28, 2.69, 0.0, 0.08, 0.05}},
      {"onions, raw", {40, 0.1, 1.1, 0.0, 0.04, 4.24}},
      {"garlic, raw", {149, 0.5, 6.36, 0.04, 0.09, 1.0}},
      {"tomatoes, red, ripe, raw", {18, 0.2, 0.88, 0.01, 0.03, 2.63}},
      {"cheese, cheddar", {403, 33.1, 24.9, 1.6, 21.1, 0.5}},
      {"beef, ground, 80% lean meat", {254, 20, 17.2, 0.17, 7.6, 0}},
      {"honey", {304, 0, 0.3, 0.01, 0, 82.1}},
      {"cream, fluid, heavy whipping", {340, 36.1, 2.84, 0.07, 23, 2.92}},
      {"salt, table", {0, 0, 0, 97.0, 0, 0}},
      {"spinach, raw", {23, 0.39, 2.86, 0.2, 0.06, 0.42}},
      {"oats, rolled", {379, 6.5, 13.2, 0.01, 1.1, 1.0}},
      {"almonds, dry roasted", {598, 52.5, 20.9, 0.0, 4.0, 4.9}},
      {"bananas, raw", {89, 0.33, 1.09, 0.0, 0.11, 12.2}},
      {"potatoes, flesh and skin, raw", {77, 0.1, 2.0, 0.02, 0.03, 0.8}},
      {"salmon, atlantic, farmed, raw", {208, 13.4, 20.4, 0.15, 3.1, 0}},
      {"chocolate, dark, 70-85% cacao solids", {598, 42.6, 7.8, 0.05, 24.5, 24.0}},
      {"yogurt, greek, plain, nonfat", {59, 0.39, 10.2, 0.09, 0.12, 3.24}},
      {"lentils, mature seeds, cooked", {116, 0.38, 9.0, 0.0, 0.05, 1.8}},
      {"carrots, raw", {41, 0.24, 0.93, 0.17, 0.04, 4.74}},
      {"bacon, pork, cured, cooked", {541, 41.8, 37, 4.5, 13.7, 1.4}},
  };
  return items;
}

inline constexpr std::array<std::pair<const char*, double>, 6> kSyntheticMeasures = {{
    {"cup", 236.6}, {"tablespoon", 14.79}, {"teaspoon", 4.93}, {"g", 1.0}, {"pound", 453.6}, {"oz", 28.35},
}};

/// Deterministic recipe corpus. Labels are mass-weighted ingredient profiles,
/// so a linear model over ingredient names has signal to find.
inline std::vector<nutriest::dataset::RecipeSample> synthetic_recipes(size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& items = synthetic_ingredients();
  std::uniform_int_distribution<size_t> pick_item(0, items.size() - 1);
  std::uniform_int_distribution<size_t> pick_measure(0, kSyntheticMeasures.size() - 1);
  std::uniform_int_distribution<int> pick_count(2, 6);
  std::uniform_int_distribution<int> pick_qty(1, 8);

  std::vector<nutriest::dataset::RecipeSample> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    int count = pick_count(rng);
    std::string text;
    std::array<double, 6> total{};
    double mass = 0.0;
    for (int c = 0; c < count; ++c) {
      const auto& item = items[pick_item(rng)];
      const auto& [unit, grams] = kSyntheticMeasures[pick_measure(rng)];
      int qty = pick_qty(rng);
      double g = qty * grams * (std::string(unit) == "g" ? 25.0 : 1.0);
      if (!text.empty()) text += ", ";
      text += std::to_string(std::string(unit) == "g" ? qty * 25 : qty) + " " + unit + " " + item.name;
      for (size_t k = 0; k < 6; ++k) total[k] += item.per100[k] * g / 100.0;
      mass += g;
    }
    nutriest::NutrientVector labels;
    for (size_t k = 0; k < 6; ++k) {
      labels.set(nutriest::kAllNutrients[k], std::round(total[k] / mass * 10000.0) / 100.0);
    }
    out.push_back({std::to_string(i), text, labels});
  }
  return out;
}

/// Renders recipes as raw prompt/answer json-lines, the shape `prepare` reads.
inline std::string synthetic_raw_jsonl(const std::vector<nutriest::dataset::RecipeSample>& recipes) {
  std::string out;
  for (const auto& r : recipes) {
    nlohmann::json j;
    j["id"] = r.id;
    j["prompt"] = "Check the nutritional values per 100 g in a recipe that comprises these ingredients: " +
                  r.ingredient_text;
    j["answer"] = nutriest::dataset::render_answer(*r.labels);
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace testing_support
