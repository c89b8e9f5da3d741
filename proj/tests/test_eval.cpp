#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <thread>

#include "nutriest/eval.hpp"
#include "oracles.hpp"

using namespace nutriest;
using namespace nutriest::eval;
using Catch::Approx;

namespace {

const RuleSet& rules() {
  static const RuleSet r = default_rules();
  return r;
}

const ToleranceRule& rule(Nutrient n) { return rules().at(n); }

std::string data_file(const std::string& name) { return std::string(NUTRIEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("tolerance intervals follow the default bands", "[eval]") {
  auto a = tolerance_interval(rule(Nutrient::fat), 5.0);
  CHECK(a.lo == Approx(3.5));
  CHECK(a.hi == Approx(6.5));
  auto b = tolerance_interval(rule(Nutrient::fat), 20.0);
  CHECK(b.lo == Approx(16.0));
  CHECK(b.hi == Approx(24.0));
  auto c = tolerance_interval(rule(Nutrient::fat), 50.0);
  CHECK(c.lo == Approx(42.0));
  CHECK(c.hi == Approx(58.0));

  for (const auto& [n, r] : rules()) {
    auto z = tolerance_interval(r, 0.0);
    CHECK(z.lo == 0.0);
    CHECK(z.hi == r.bands.front().margin);
  }
  CHECK(tolerance_interval(rule(Nutrient::salt), 0.1).lo == 0.0);
  CHECK_THROWS_AS(tolerance_interval(rule(Nutrient::fat), -0.1), ArgumentError);
}

TEST_CASE("within_tolerance examples", "[eval]") {
  CHECK_FALSE(within_tolerance(rule(Nutrient::fat), 20, 25));
  CHECK(within_tolerance(rule(Nutrient::fat), 20, 24));
  CHECK(within_tolerance(rule(Nutrient::protein), 50, 57));
  CHECK(within_tolerance(rule(Nutrient::protein), 50, 58));
  CHECK_FALSE(within_tolerance(rule(Nutrient::protein), 50, 58.01));
  CHECK(within_tolerance(rule(Nutrient::saturates), 4, 4.8));
  CHECK_FALSE(within_tolerance(rule(Nutrient::saturates), 3.99, 4.8));
}

TEST_CASE("breakpoints follow the boundary mode", "[eval]") {
  // Reference exactly 10 g fat: lower_exclusive puts it in the 20% band
  // (+-2), upper_inclusive in the +-1.5 g band.
  CHECK(within_tolerance(rule(Nutrient::fat), 10.0, 11.9));
  auto upper = default_rules(BoundaryMode::upper_inclusive);
  CHECK_FALSE(within_tolerance(upper.at(Nutrient::fat), 10.0, 11.9));
  CHECK(within_tolerance(upper.at(Nutrient::fat), 10.0, 11.5));
  CHECK(tolerance_interval(upper.at(Nutrient::fat), 40.0).hi == Approx(48.0));
  CHECK(tolerance_interval(rule(Nutrient::fat), 40.0).hi == Approx(48.0));
  CHECK(tolerance_interval(upper.at(Nutrient::fat), 0.0).hi == Approx(1.5));
}

TEST_CASE("a perfect prediction is always within tolerance", "[eval][property]") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  for (const auto& [n, r] : rules()) {
    for (int i = 0; i < 2000; ++i) {
      double ref = (i % 10 == 0) ? std::floor(u(rng)) : u(rng);
      CHECK(within_tolerance(r, ref, ref));
    }
  }
}

TEST_CASE("every reference on the grid falls in exactly one band", "[eval][property]") {
  for (auto mode : {BoundaryMode::lower_exclusive, BoundaryMode::upper_inclusive}) {
    for (const auto& [n, r] : default_rules(mode)) {
      for (int i = 0; i <= 20000; ++i) {
        double ref = i * 0.01;
        int hits = 0;
        for (size_t k = 0; k < r.bands.size(); ++k) {
          const auto& b = r.bands[k];
          bool last = k + 1 == r.bands.size();
          bool in = mode == BoundaryMode::lower_exclusive
                        ? ref >= b.lower && (last || ref < b.upper)
                        : (k == 0 ? ref >= b.lower : ref > b.lower) && (last || ref <= b.upper);
          hits += in ? 1 : 0;
        }
        CHECK(hits == 1);
        CHECK_NOTHROW(r.band_for(ref));
      }
    }
  }
}

TEST_CASE("relative bands widen linearly with the reference", "[eval][property]") {
  const auto& r = rule(Nutrient::fat);
  for (double ref = 10.0; ref < 40.0; ref += 0.37) {
    auto iv = tolerance_interval(r, ref);
    CHECK(iv.hi - iv.lo == Approx(0.4 * ref));
  }
  const auto& s = rule(Nutrient::salt);
  for (double ref = 1.25; ref < 50.0; ref += 0.91) {
    auto iv = tolerance_interval(s, ref);
    CHECK(iv.hi - iv.lo == Approx(0.4 * ref));
  }
}

TEST_CASE("within_tolerance agrees with the brute-force band table", "[eval][property]") {
  auto file = nlohmann::json::parse(text::read_file(data_file("eu_tolerances.json")));
  for (bool upper_inclusive : {false, true}) {
    oracles::BandTable table(file, upper_inclusive);
    auto rs = load_rules(data_file("eu_tolerances.json"),
                         upper_inclusive ? BoundaryMode::upper_inclusive : BoundaryMode::lower_exclusive);
    for (const auto& name : table.nutrients()) {
      const auto& r = rs.at(parse_nutrient(name));
      for (int i = 0; i <= 200; i += 3) {
        for (int j = 0; j <= 200; j += 3) {
          double ref = i * 0.5;
          double pred = j * 0.5;
          CHECK(within_tolerance(r, ref, pred) == table.accept(name, ref, pred));
        }
      }
    }
  }
}

TEST_CASE("tolerance file matches the built-in rules", "[eval]") {
  auto file = load_rules(data_file("eu_tolerances.json"));
  CHECK(rules_to_json(file) == rules_to_json(default_rules()));
  CHECK(file.size() == 5);
  CHECK_FALSE(file.contains(Nutrient::energy));
}

TEST_CASE("rule files are validated", "[eval]") {
  auto gap = nlohmann::json::parse(R"({"fat": [
      {"lower": 0, "upper": 10, "margin_kind": "absolute_g", "margin": 1},
      {"lower": 11, "upper": null, "margin_kind": "absolute_g", "margin": 1}]})");
  CHECK_THROWS_AS(rules_from_json(gap), ParseError);
  auto zero = nlohmann::json::parse(R"({"fat": [{"lower": 0, "upper": null, "margin_kind": "absolute_g", "margin": 0}]})");
  CHECK_THROWS_AS(rules_from_json(zero), ParseError);
  auto finite = nlohmann::json::parse(R"({"fat": [{"lower": 0, "upper": 5, "margin_kind": "absolute_g", "margin": 1}]})");
  CHECK_THROWS_AS(rules_from_json(finite), ParseError);
  auto kind = nlohmann::json::parse(R"({"fat": [{"lower": 0, "upper": null, "margin_kind": "ppm", "margin": 1}]})");
  CHECK_THROWS_AS(rules_from_json(kind), ParseError);
}

TEST_CASE("evaluate scores binary accuracy per nutrient", "[eval]") {
  std::map<std::string, NutrientVector> labels;
  PredictionMap preds;
  for (int i = 0; i < 10; ++i) {
    NutrientVector v{100, 1.0 * i, 2.0 * i, 0.1, 0.5 * i, 3.0 * i};
    labels[std::to_string(i)] = v;
    preds[std::to_string(i)] = NutrientPrediction::from_labels(v);
  }
  auto all = evaluate(preds, labels, rules());
  for (Nutrient n : kScoredNutrients) CHECK(all.score(n).accuracy_percent == 100.0);
  CHECK(all.n_missing == 0);

  std::map<std::string, NutrientVector> one = {{"a", {0, 5.0, 1, 0, 1, 1}}};
  PredictionMap p1 = {{"a", {7.0, 1, 1, 1}}};
  auto r1 = evaluate(p1, one, rules());
  CHECK(r1.score(Nutrient::fat).accuracy_percent == 0.0);
  CHECK(r1.score(Nutrient::protein).accuracy_percent == 100.0);
  CHECK(r1.score(Nutrient::saturates).accuracy_percent == 100.0);
  CHECK(r1.score(Nutrient::sugars).accuracy_percent == 100.0);

  std::map<std::string, NutrientVector> two = {{"a", {0, 5, 5, 0, 1, 5}}, {"b", {0, 5, 5, 0, 1, 5}}};
  PredictionMap p2 = {{"a", {5, 5, 1, 5}}, {"b", {50, 50, 50, 50}}};
  auto r2 = evaluate(p2, two, rules());
  for (Nutrient n : kScoredNutrients) CHECK(r2.score(n).accuracy_percent == 50.0);
}

TEST_CASE("evaluate counts missing ids as failures", "[eval]") {
  std::map<std::string, NutrientVector> labels = {{"a", {0, 1, 1, 0, 1, 1}}, {"b", {0, 1, 1, 0, 1, 1}}};
  PredictionMap preds = {{"a", {1, 1, 1, 1}}};
  auto r = evaluate(preds, labels, rules());
  CHECK(r.n_missing == 1);
  CHECK(r.n_samples == 2);
  CHECK(r.score(Nutrient::fat).accuracy_percent == 50.0);
  CHECK(r.score(Nutrient::fat).n_within == 1);

  CHECK_THROWS_AS(evaluate({}, labels, rules()), ArgumentError);
  CHECK_THROWS_AS(evaluate({{"zz", {}}}, labels, rules()), ArgumentError);

  auto j = r.to_json();
  CHECK(j["fat"]["n"] == 2);
  CHECK(j["fat"]["within"] == 1);
  CHECK(j["fat"]["accuracy"] == 50.0);
  CHECK(r.to_table().find("50.00%") != std::string::npos);
}

TEST_CASE("evaluate is invariant to sample order", "[eval][property]") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0, 60);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::tuple<std::string, NutrientVector, NutrientPrediction>> rows;
    for (int i = 0; i < 50; ++i) {
      rows.emplace_back("id" + std::to_string(rng() % 100000) + "_" + std::to_string(i),
                        NutrientVector{0, u(rng), u(rng), 0, u(rng), u(rng)},
                        NutrientPrediction{u(rng), u(rng), u(rng), u(rng)});
    }
    auto build = [&] {
      std::map<std::string, NutrientVector> labels;
      PredictionMap preds;
      for (const auto& [id, l, p] : rows) {
        labels.emplace(id, l);
        preds.emplace(id, p);
      }
      return evaluate(preds, labels, rules());
    };
    auto a = build();
    std::shuffle(rows.begin(), rows.end(), rng);
    auto b = build();
    CHECK(a.to_json() == b.to_json());
  }
}

TEST_CASE("latency statistics", "[eval]") {
  auto one = summarize_latencies({0.004}, 0.004);
  CHECK(one.mean == one.median);
  CHECK(one.median == one.p95);
  CHECK(one.p95 == 0.004);

  std::vector<double> xs;
  for (int i = 1; i <= 100; ++i) xs.push_back(i * 0.001);
  auto s = summarize_latencies(xs, 5.05);
  CHECK(s.n == 100);
  CHECK(s.mean == Approx(0.0505));
  CHECK(s.median == Approx(0.0505));
  CHECK(s.p95 == Approx(0.095));
  CHECK(s.median <= s.p95);
}

TEST_CASE("bench_latency times a 1 ms stub", "[eval]") {
  std::vector<int> samples(50, 0);
  int warm = 0;
  auto stats = bench_latency<int>(
      [&](int) {
        ++warm;
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
        return 0;
      },
      std::span<const int>(samples), 5);
  CHECK(warm == 55);
  CHECK(stats.n == 50);
  CHECK(stats.mean >= 0.001);
  CHECK(stats.mean < 0.02);
  CHECK(stats.median <= stats.p95);
  CHECK(stats.wall_clock_total >= 0.05);
  CHECK_THROWS_AS(bench_latency<int>([](int) { return 0; }, std::span<const int>(), 0), ArgumentError);
}
