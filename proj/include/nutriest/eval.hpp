#pragma once

// Tolerance-band scoring of nutrient predictions and latency measurement.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nutriest/common.hpp"
#include "nutriest/nutrients.hpp"

namespace nutriest::eval {

enum class MarginKind { absolute_g, relative_fraction };

inline std::string_view margin_kind_name(MarginKind k) {
  return k == MarginKind::absolute_g ? "absolute_g" : "relative_fraction";
}

inline MarginKind parse_margin_kind(std::string_view s) {
  if (s == "absolute_g") return MarginKind::absolute_g;
  if (s == "relative_fraction") return MarginKind::relative_fraction;
  throw ParseError("unknown margin_kind '" + std::string(s) + "'");
}

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Band {
  double lower = 0.0;
  double upper = kInfinity;
  MarginKind margin_kind = MarginKind::absolute_g;
  double margin = 0.0;

  bool operator==(const Band&) const = default;
};

/// Which band owns a breakpoint value. With `lower_exclusive` (the default) a
/// reference equal to a breakpoint belongs to the upper band, so "<10 g"
/// applies strictly below 10. `upper_inclusive` assigns it to the lower band.
enum class BoundaryMode { lower_exclusive, upper_inclusive };

struct ToleranceRule {
  Nutrient nutrient = Nutrient::fat;
  std::vector<Band> bands;
  BoundaryMode boundary = BoundaryMode::lower_exclusive;

  /// Bands must start at 0, be contiguous, end at infinity, and carry
  /// positive margins.
  void validate() const {
    std::string who(nutrient_name(nutrient));
    if (bands.empty()) throw ArgumentError("tolerance rule '" + who + "' has no bands");
    if (bands.front().lower != 0.0) throw ArgumentError("tolerance rule '" + who + "' must start at 0");
    for (size_t i = 0; i < bands.size(); ++i) {
      const auto& b = bands[i];
      if (!(b.margin > 0.0) || !std::isfinite(b.margin)) {
        throw ArgumentError("tolerance rule '" + who + "': margins must be > 0");
      }
      if (!(b.upper > b.lower)) throw ArgumentError("tolerance rule '" + who + "': empty band");
      if (i + 1 < bands.size() && bands[i + 1].lower != b.upper) {
        throw ArgumentError("tolerance rule '" + who + "': bands leave a gap or overlap");
      }
    }
    if (bands.back().upper != kInfinity) throw ArgumentError("tolerance rule '" + who + "' must extend to infinity");
  }

  const Band& band_for(double reference) const {
    for (size_t i = 0; i < bands.size(); ++i) {
      const auto& b = bands[i];
      bool last = i + 1 == bands.size();
      bool inside = boundary == BoundaryMode::lower_exclusive
                        ? reference >= b.lower && (last || reference < b.upper)
                        : (i == 0 ? reference >= b.lower : reference > b.lower) && (last || reference <= b.upper);
      if (inside) return b;
    }
    throw ArgumentError("no tolerance band covers reference " + std::to_string(reference));
  }
};

using RuleSet = std::map<Nutrient, ToleranceRule>;

inline RuleSet rules_from_json(const nlohmann::json& j, BoundaryMode boundary = BoundaryMode::lower_exclusive) {
  RuleSet rules;
  try {
    for (const auto& [name, bands] : j.items()) {
      ToleranceRule rule;
      rule.nutrient = parse_nutrient(name);
      rule.boundary = boundary;
      for (const auto& b : bands) {
        Band band;
        band.lower = b.at("lower").get<double>();
        band.upper = b.at("upper").is_null() ? kInfinity : b.at("upper").get<double>();
        band.margin_kind = parse_margin_kind(b.at("margin_kind").get<std::string>());
        band.margin = b.at("margin").get<double>();
        rule.bands.push_back(band);
      }
      rule.validate();
      rules[rule.nutrient] = std::move(rule);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tolerance rules: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("tolerance rules: ") + e.what());
  }
  return rules;
}

inline nlohmann::json rules_to_json(const RuleSet& rules) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [n, rule] : rules) {
    nlohmann::json bands = nlohmann::json::array();
    for (const auto& b : rule.bands) {
      bands.push_back({{"lower", b.lower},
                       {"upper", std::isinf(b.upper) ? nlohmann::json(nullptr) : nlohmann::json(b.upper)},
                       {"margin_kind", margin_kind_name(b.margin_kind)},
                       {"margin", b.margin}});
    }
    j[std::string(nutrient_name(n))] = bands;
  }
  return j;
}

inline RuleSet load_rules(const std::string& path, BoundaryMode boundary = BoundaryMode::lower_exclusive) {
  try {
    return rules_from_json(nlohmann::json::parse(text::read_file(path)), boundary);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("tolerance rules '" + path + "': " + e.what());
  }
}

/// EU labelling-tolerance guidance bands (identical to data/eu_tolerances.json).
inline constexpr std::string_view kDefaultRulesJson = R"({
  "fat": [
    {"lower": 0, "upper": 10, "margin_kind": "absolute_g", "margin": 1.5},
    {"lower": 10, "upper": 40, "margin_kind": "relative_fraction", "margin": 0.2},
    {"lower": 40, "upper": null, "margin_kind": "absolute_g", "margin": 8}
  ],
  "saturates": [
    {"lower": 0, "upper": 4, "margin_kind": "absolute_g", "margin": 0.8},
    {"lower": 4, "upper": null, "margin_kind": "relative_fraction", "margin": 0.2}
  ],
  "sugars": [
    {"lower": 0, "upper": 10, "margin_kind": "absolute_g", "margin": 2},
    {"lower": 10, "upper": 40, "margin_kind": "relative_fraction", "margin": 0.2},
    {"lower": 40, "upper": null, "margin_kind": "absolute_g", "margin": 8}
  ],
  "protein": [
    {"lower": 0, "upper": 10, "margin_kind": "absolute_g", "margin": 2},
    {"lower": 10, "upper": 40, "margin_kind": "relative_fraction", "margin": 0.2},
    {"lower": 40, "upper": null, "margin_kind": "absolute_g", "margin": 8}
  ],
  "salt": [
    {"lower": 0, "upper": 1.25, "margin_kind": "absolute_g", "margin": 0.375},
    {"lower": 1.25, "upper": null, "margin_kind": "relative_fraction", "margin": 0.2}
  ]
})";

inline RuleSet default_rules(BoundaryMode boundary = BoundaryMode::lower_exclusive) {
  return rules_from_json(nlohmann::json::parse(kDefaultRulesJson), boundary);
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

inline Interval tolerance_interval(const ToleranceRule& rule, double reference) {
  if (!(reference >= 0.0) || !std::isfinite(reference)) {
    throw ArgumentError("reference value must be finite and >= 0, got " + std::to_string(reference));
  }
  const Band& b = rule.band_for(reference);
  double m = b.margin_kind == MarginKind::absolute_g ? b.margin : b.margin * reference;
  return {std::max(0.0, reference - m), reference + m};
}

/// Inclusive at both interval ends.
inline bool within_tolerance(const ToleranceRule& rule, double reference, double predicted) {
  auto iv = tolerance_interval(rule, reference);
  return predicted >= iv.lo && predicted <= iv.hi;
}

struct NutrientScore {
  Nutrient nutrient = Nutrient::fat;
  size_t n_samples = 0;
  size_t n_within = 0;
  double accuracy_percent = 0.0;
};

struct EvalReport {
  std::vector<NutrientScore> scores;
  size_t n_samples = 0;
  size_t n_missing = 0;

  const NutrientScore& score(Nutrient n) const {
    for (const auto& s : scores) {
      if (s.nutrient == n) return s;
    }
    throw LookupError("nutrient '" + std::string(nutrient_name(n)) + "' was not scored");
  }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& s : scores) {
      j[std::string(nutrient_name(s.nutrient))] = {
          {"n", s.n_samples}, {"within", s.n_within}, {"accuracy", s.accuracy_percent}};
    }
    return j;
  }

  std::string to_table() const {
    std::ostringstream os;
    os << std::left << std::setw(12) << "nutrient" << std::right << std::setw(8) << "n" << std::setw(10)
       << "within" << std::setw(12) << "accuracy" << '\n';
    for (const auto& s : scores) {
      os << std::left << std::setw(12) << nutrient_name(s.nutrient) << std::right << std::setw(8) << s.n_samples
         << std::setw(10) << s.n_within << std::setw(11) << text::format_fixed2(s.accuracy_percent) << "%\n";
    }
    os << "samples: " << n_samples << ", missing predictions: " << n_missing << '\n';
    return os.str();
  }
};

/// Scores every labeled id; ids without a prediction count as failures for
/// all nutrients. A prediction without a label is an ArgumentError.
inline EvalReport evaluate(const PredictionMap& preds, const std::map<std::string, NutrientVector>& labels,
                           const RuleSet& rules,
                           std::span<const Nutrient> nutrients = std::span<const Nutrient>(kScoredNutrients)) {
  if (preds.empty()) throw ArgumentError("no predictions to evaluate");
  for (const auto& [id, p] : preds) {
    if (!labels.contains(id)) throw ArgumentError("prediction id '" + id + "' has no label");
  }
  EvalReport report;
  report.n_samples = labels.size();
  for (const auto& [id, v] : labels) {
    if (!preds.contains(id)) ++report.n_missing;
  }
  for (Nutrient n : nutrients) {
    auto rule = rules.find(n);
    if (rule == rules.end()) throw ArgumentError("no tolerance rule for '" + std::string(nutrient_name(n)) + "'");
    NutrientScore s;
    s.nutrient = n;
    s.n_samples = labels.size();
    for (const auto& [id, v] : labels) {
      auto p = preds.find(id);
      if (p != preds.end() && within_tolerance(rule->second, v.get(n), p->second.get(n))) ++s.n_within;
    }
    s.accuracy_percent = s.n_samples == 0 ? 0.0 : 100.0 * static_cast<double>(s.n_within) /
                                                      static_cast<double>(s.n_samples);
    report.scores.push_back(s);
  }
  return report;
}

struct LatencyStats {
  size_t n = 0;
  double mean = 0.0;    // seconds per call
  double median = 0.0;
  double p95 = 0.0;     // nearest-rank
  double wall_clock_total = 0.0;
};

inline LatencyStats summarize_latencies(std::vector<double> seconds, double wall_clock_total) {
  LatencyStats st;
  st.n = seconds.size();
  st.wall_clock_total = wall_clock_total;
  if (seconds.empty()) return st;
  std::sort(seconds.begin(), seconds.end());
  double sum = 0.0;
  for (double s : seconds) sum += s;
  st.mean = sum / static_cast<double>(st.n);
  st.median = st.n % 2 == 1 ? seconds[st.n / 2] : 0.5 * (seconds[st.n / 2 - 1] + seconds[st.n / 2]);
  auto rank = static_cast<size_t>(std::ceil(0.95 * static_cast<double>(st.n)));
  st.p95 = seconds[std::max<size_t>(rank, 1) - 1];
  return st;
}

/// Runs `warmup` unmeasured calls (cycling over samples), then times one call
/// per sample on the calling thread with a monotonic clock.
template <typename Sample, typename Fn>
LatencyStats bench_latency(Fn&& predict_fn, std::span<const Sample> samples, size_t warmup) {
  if (samples.empty()) throw ArgumentError("bench_latency needs at least one sample");
  using Clock = std::chrono::steady_clock;
  for (size_t i = 0; i < warmup; ++i) (void)predict_fn(samples[i % samples.size()]);

  std::vector<double> durations;
  durations.reserve(samples.size());
  auto wall_start = Clock::now();
  for (const auto& s : samples) {
    auto t0 = Clock::now();
    (void)predict_fn(s);
    auto t1 = Clock::now();
    durations.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  double wall = std::chrono::duration<double>(Clock::now() - wall_start).count();
  return summarize_latencies(std::move(durations), wall);
}

}  // namespace nutriest::eval
