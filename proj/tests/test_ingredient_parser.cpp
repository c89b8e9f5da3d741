#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nutriest/ingredient_parser.hpp"

using namespace nutriest;
using namespace nutriest::ingredients;
using Catch::Approx;

TEST_CASE("parse_quantity handles integers, decimals, fractions and mixed numbers", "[ingredients]") {
  CHECK(parse_quantity("1/2") == Rational(1, 2));
  CHECK(parse_quantity("2") == Rational(2));
  CHECK(parse_quantity("1 1/2") == Rational(3, 2));
  CHECK(parse_quantity("0.25") == Rational(1, 4));
  CHECK(parse_quantity("2/4") == Rational(1, 2));
  CHECK(parse_quantity("\xC2\xBD") == Rational(1, 2));
  CHECK(parse_quantity("1 \xC2\xBC") == Rational(5, 4));
  CHECK(parse_quantity("a") == Rational(1));
  CHECK(parse_quantity("An") == Rational(1));
}

TEST_CASE("parse_quantity rejects bad tokens", "[ingredients]") {
  CHECK_THROWS_AS(parse_quantity("1/0"), ParseError);
  CHECK_THROWS_AS(parse_quantity("cup"), ParseError);
  CHECK_THROWS_AS(parse_quantity(""), ParseError);
  CHECK_THROWS_AS(parse_quantity("1/2/3"), ParseError);
  CHECK_THROWS_AS(parse_quantity("-1"), ParseError);
}

TEST_CASE("parse_ingredient splits quantity, unit and name", "[ingredients]") {
  CHECK(parse_ingredient("2 tablespoon soy sauce made from soy (tamari)") ==
        ParsedIngredient{Rational(2), "tablespoon", "soy sauce made from soy (tamari)"});
  CHECK(parse_ingredient("1/2 cup butter, without salt") ==
        ParsedIngredient{Rational(1, 2), "cup", "butter, without salt"});
  CHECK(parse_ingredient("salt") == ParsedIngredient{Rational(1), "unit", "salt"});
  CHECK(parse_ingredient("a pinch of salt") == ParsedIngredient{Rational(1), "pinch", "salt"});
  CHECK(parse_ingredient("a medium bunch parsley") == ParsedIngredient{Rational(1), "bunch", "parsley"});
  CHECK(parse_ingredient("3 Tbsp sugar") == ParsedIngredient{Rational(3), "tablespoon", "sugar"});
  CHECK(parse_ingredient("1 1/2 cups milk") == ParsedIngredient{Rational(3, 2), "cup", "milk"});
  CHECK(parse_ingredient("2 eggs") == ParsedIngredient{Rational(2), "unit", "eggs"});
  CHECK(parse_ingredient("2 lbs beef") == ParsedIngredient{Rational(2), "pound", "beef"});
  CHECK(parse_ingredient("2 cups") == ParsedIngredient{Rational(1), "unit", "2 cups"});
}

TEST_CASE("parse_ingredient never fails and never returns an empty name", "[ingredients][property]") {
  std::mt19937_64 rng(8);
  const std::vector<std::string> tokens = {"1", "1/2", "a", "cup", "tbsp", "of", "medium", "salt", "0/0",
                                           "\xC2\xBD", "g", "x", ",", "2.5", "an", "bunch"};
  for (int trial = 0; trial < 3000; ++trial) {
    std::string line;
    size_t n = 1 + rng() % 6;
    for (size_t i = 0; i < n; ++i) line += (i ? " " : "") + tokens[rng() % tokens.size()];
    ParsedIngredient p;
    REQUIRE_NOTHROW(p = parse_ingredient(line));
    CHECK_FALSE(p.name.empty());
    CHECK(p.quantity.num() >= 0);
  }
}

TEST_CASE("split_ingredient_lines keeps descriptive commas", "[ingredients]") {
  auto lines = split_ingredient_lines(
      "2 teaspoons corn, sweet, white, raw, 1/2 cup butter, without salt, 2 tablespoon soy sauce");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "2 teaspoons corn, sweet, white, raw");
  CHECK(lines[1] == "1/2 cup butter, without salt");
  CHECK(lines[2] == "2 tablespoon soy sauce");
  CHECK(split_ingredient_lines("").empty());
}

TEST_CASE("to_grams uses the default table", "[ingredients]") {
  const auto& t = default_conversion_table();
  CHECK(to_grams(Rational(1), "cup", "water", t) == Approx(236.6));
  CHECK(to_grams(Rational(1), "tablespoon", "butter", t) == Approx(14.2));
  CHECK(to_grams(Rational(1), "tablespoon", "butter, without salt", t) == Approx(14.2));
  CHECK(to_grams(Rational(1), "tablespoon", "sugar", t) == Approx(14.79));
  CHECK(to_grams(Rational(1, 2), "cup", "butter", t) == Approx(113.5));
  CHECK(to_grams(Rational(1), "tbsp", "oil", t) == Approx(14.79));
  for (const auto& unit : t.known_units()) CHECK(to_grams(Rational(0), unit, "egg", t) == 0.0);
}

TEST_CASE("to_grams prefers the longest matching keyword", "[ingredients]") {
  auto t = ConversionTable::from_json(nlohmann::json::parse(R"({
    "generic": {"cup": 200},
    "per_ingredient": {"cup": {"butter": 227, "peanut butter": 258}}
  })"));
  CHECK(to_grams(Rational(1), "cup", "smooth peanut butter", t) == Approx(258));
  CHECK(to_grams(Rational(1), "cup", "butter", t) == Approx(227));
  CHECK(to_grams(Rational(1), "cup", "water", t) == Approx(200));
}

TEST_CASE("to_grams lists known units for an unknown one", "[ingredients]") {
  try {
    to_grams(Rational(1), "glorp", "slime", default_conversion_table());
    FAIL("expected LookupError");
  } catch (const LookupError& e) {
    std::string msg = e.what();
    CHECK(msg.find("glorp") != std::string::npos);
    CHECK(msg.find("cup") != std::string::npos);
    CHECK(msg.find("tablespoon") != std::string::npos);
  }
}

TEST_CASE("to_grams is linear in quantity", "[ingredients][property]") {
  const auto& t = default_conversion_table();
  std::mt19937_64 rng(4);
  auto units = t.known_units();
  for (int trial = 0; trial < 500; ++trial) {
    Rational q(static_cast<std::int64_t>(rng() % 1000), 1 + static_cast<std::int64_t>(rng() % 16));
    const auto& unit = units[rng() % units.size()];
    std::string name = (rng() % 2) ? "butter" : "egg";
    if (unit == "unit" && name != "egg") continue;
    CHECK(to_grams(q * Rational(2), unit, name, t) == Approx(2.0 * to_grams(q, unit, name, t)));
  }
}

TEST_CASE("recipe_mass sums resolvable lines", "[ingredients]") {
  const auto& t = default_conversion_table();
  std::vector<std::string> lines = {"1 cup water", "1 tablespoon butter"};
  auto m = recipe_mass(lines, t);
  CHECK(m.grams == Approx(250.8));
  CHECK(m.unresolved.empty());

  CHECK(recipe_mass(std::vector<std::string>{}, t).grams == 0.0);

  auto u = recipe_mass(std::vector<std::string>{"1 glorp slime"}, t);
  CHECK(u.grams == 0.0);
  CHECK(u.unresolved == std::vector<std::string>{"1 glorp slime"});
}

TEST_CASE("recipe_mass equals the sum of per-line conversions", "[ingredients][property]") {
  const auto& t = default_conversion_table();
  std::mt19937_64 rng(17);
  const std::vector<std::string> pool = {"1 cup water", "2 tbsp butter", "1/2 tsp salt", "3 eggs",
                                         "a pinch of pepper", "1 glorp slime", "100 g flour", "1 bunch herbs"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> lines;
    size_t n = rng() % 6;
    for (size_t i = 0; i < n; ++i) lines.push_back(pool[rng() % pool.size()]);
    auto m = recipe_mass(lines, t);
    double expected = 0.0;
    size_t unresolved = 0;
    for (const auto& l : lines) {
      auto p = parse_ingredient(l);
      try {
        expected += to_grams(p.quantity, p.unit, p.name, t);
      } catch (const LookupError&) {
        ++unresolved;
      }
    }
    CHECK(m.grams >= 0.0);
    CHECK(m.grams == Approx(expected));
    CHECK(m.unresolved.size() == unresolved);
  }
}

TEST_CASE("conversion table file matches the built-in default", "[ingredients]") {
  auto file = ConversionTable::load(std::string(NUTRIEST_DATA_DIR) + "/conversions.json");
  CHECK(file.to_json() == default_conversion_table().to_json());
  CHECK(file.placeholders == std::vector<std::string>{"bunch", "unit/egg"});
}

TEST_CASE("conversion table rejects non-positive factors", "[ingredients]") {
  CHECK_THROWS_AS(ConversionTable::from_json(nlohmann::json::parse(R"({"generic": {"cup": 0}})")), ArgumentError);
  CHECK_THROWS_AS(ConversionTable::from_json(nlohmann::json::parse(R"({"per_ingredient": {}})")), ParseError);
}
