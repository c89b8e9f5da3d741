#pragma once

// Command-line pipeline: prepare, train, predict, llm-predict, refine,
// merge, evaluate, bench.

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nutriest/common.hpp"
#include "nutriest/dataset.hpp"
#include "nutriest/eval.hpp"
#include "nutriest/features.hpp"
#include "nutriest/llm.hpp"
#include "nutriest/nutrients.hpp"
#include "nutriest/regression.hpp"

namespace nutriest::cli {

/// Invalid flag combination; exits with status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Declarative run settings. Loaded from --config; command-line flags win.
struct PipelineConfig {
  std::string format = "jsonl";
  double split_ratio = 0.8;
  std::uint64_t split_seed = 42;
  features::VectorizerConfig word = features::default_word_config();
  features::VectorizerConfig chars = features::default_char_config();
  regression::RidgeConfig ridge;
  std::vector<double> alpha_grid;
  std::vector<Nutrient> targets = regression::default_targets();
  std::map<std::string, llm::EndpointConfig> endpoints = llm::builtin_endpoint_profiles();
  llm::GenerationParams generation;
  std::string rules_path;
  std::string boundary = "lower_exclusive";
  size_t workers = default_workers();

  static PipelineConfig from_json(const nlohmann::json& j) {
    PipelineConfig c;
    try {
      if (j.contains("data")) c.format = j["data"].value("format", c.format);
      if (j.contains("split")) {
        c.split_ratio = j["split"].value("ratio", c.split_ratio);
        c.split_seed = j["split"].value("seed", c.split_seed);
      }
      if (j.contains("word")) c.word = features::VectorizerConfig::from_json(j["word"], c.word);
      if (j.contains("char")) c.chars = features::VectorizerConfig::from_json(j["char"], c.chars);
      if (j.contains("ridge")) {
        const auto& r = j["ridge"];
        c.ridge = regression::RidgeConfig::from_json(r, c.ridge);
        if (r.contains("alpha_grid")) c.alpha_grid = r["alpha_grid"].get<std::vector<double>>();
        if (r.contains("targets")) {
          c.targets.clear();
          for (const auto& t : r["targets"]) c.targets.push_back(parse_nutrient(t.get<std::string>()));
        }
      }
      if (j.contains("endpoints")) {
        for (const auto& [name, ep] : j["endpoints"].items()) c.endpoints[name] = llm::EndpointConfig::from_json(ep);
      }
      if (j.contains("generation")) {
        c.generation.temperature = j["generation"].value("temperature", c.generation.temperature);
        c.generation.max_tokens = j["generation"].value("max_tokens", c.generation.max_tokens);
      }
      c.rules_path = j.value("rules", c.rules_path);
      c.boundary = j.value("boundary", c.boundary);
      c.workers = j.value("workers", c.workers);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("pipeline config: ") + e.what());
    }
    return c;
  }

  static PipelineConfig load(const std::string& path) {
    try {
      return from_json(nlohmann::json::parse(text::read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("pipeline config '" + path + "': " + e.what());
    }
  }
};

namespace detail {

inline std::vector<double> parse_alpha_grid(const std::string& s) {
  std::vector<double> out;
  for (const auto& part : text::split(s, ',')) {
    if (text::trim(part).empty()) continue;
    out.push_back(text::parse_double(part));
  }
  if (out.empty()) throw UsageError("--alpha-grid is empty");
  return out;
}

inline std::vector<Nutrient> parse_nutrient_list(const std::string& s) {
  std::vector<Nutrient> out;
  for (const auto& part : text::split(s, ',')) {
    if (text::trim(part).empty()) continue;
    out.push_back(parse_nutrient(part));
  }
  if (out.empty()) throw UsageError("nutrient list is empty");
  return out;
}

inline eval::BoundaryMode parse_boundary(const std::string& s) {
  if (s == "lower_exclusive") return eval::BoundaryMode::lower_exclusive;
  if (s == "upper_inclusive") return eval::BoundaryMode::upper_inclusive;
  throw UsageError("unknown boundary mode '" + s + "' (lower_exclusive or upper_inclusive)");
}

inline eval::RuleSet load_rules(const PipelineConfig& cfg) {
  auto boundary = parse_boundary(cfg.boundary);
  return cfg.rules_path.empty() ? eval::default_rules(boundary) : eval::load_rules(cfg.rules_path, boundary);
}

inline std::vector<dataset::RecipeSample> read_labeled(const std::string& path) {
  auto samples = dataset::read_recipes(path);
  for (const auto& s : samples) {
    if (!s.labels) throw ParseError("'" + path + "': sample '" + s.id + "' has no labels");
  }
  return samples;
}

inline std::map<std::string, NutrientVector> label_map(const std::vector<dataset::RecipeSample>& samples) {
  std::map<std::string, NutrientVector> out;
  for (const auto& s : samples) {
    if (s.labels) out[s.id] = *s.labels;
  }
  return out;
}

inline double mean_accuracy(const eval::EvalReport& r) {
  double s = 0.0;
  for (const auto& sc : r.scores) s += sc.accuracy_percent;
  return r.scores.empty() ? 0.0 : s / static_cast<double>(r.scores.size());
}

inline void require_file(const std::string& path, const std::string& flag) {
  if (!std::filesystem::is_regular_file(path)) throw IoError(flag + ": no such file '" + path + "'");
}

inline std::vector<IdPrediction> predict_all(const regression::TrainedPipeline& p,
                                             const std::vector<dataset::RecipeSample>& samples, size_t workers) {
  std::vector<IdPrediction> out(samples.size());
  parallel_for(samples.size(), workers, [&](size_t i) {
    out[i] = {samples[i].id, p.predict(samples[i].ingredient_text)};
  });
  return out;
}

inline llm::EndpointConfig select_endpoint(const PipelineConfig& cfg, const std::string& profile) {
  auto it = cfg.endpoints.find(profile);
  if (it == cfg.endpoints.end()) {
    std::string known;
    for (const auto& [name, ep] : cfg.endpoints) known += (known.empty() ? "" : ", ") + name;
    throw UsageError("unknown endpoint profile '" + profile + "' (known: " + known + ")");
  }
  const auto& env = it->second.api_key_env;
  if (!env.empty() && (std::getenv(env.c_str()) == nullptr || *std::getenv(env.c_str()) == '\0')) {
    throw Error("endpoint '" + profile + "' needs the API key in environment variable " + env);
  }
  return it->second;
}

}  // namespace detail

/// Trains with the configured alpha, or picks the grid alpha with the best
/// mean validation tolerance accuracy over the scored nutrients.
struct TrainOutcome {
  regression::TrainedPipeline pipeline;
  std::vector<std::pair<double, eval::EvalReport>> grid;
  double chosen_alpha = 0.0;
};

inline TrainOutcome train_with_grid(const std::vector<dataset::RecipeSample>& train,
                                    const std::vector<dataset::RecipeSample>* validation,
                                    const PipelineConfig& cfg, const eval::RuleSet& rules) {
  std::vector<std::string> texts;
  std::vector<NutrientVector> labels;
  for (const auto& s : train) {
    texts.push_back(s.ingredient_text);
    labels.push_back(*s.labels);
  }

  TrainOutcome out;
  if (cfg.alpha_grid.empty()) {
    out.pipeline = regression::train_pipeline(texts, labels, cfg.word, cfg.chars, cfg.targets, cfg.ridge, cfg.workers);
    out.chosen_alpha = cfg.ridge.alpha;
    return out;
  }
  if (validation == nullptr) throw UsageError("--alpha-grid requires --val");

  auto vectorizer = features::CombinedVectorizer::fit(texts, cfg.word, cfg.chars);
  auto rows = vectorizer.transform_batch(texts, cfg.workers);
  std::vector<std::string> val_texts;
  for (const auto& s : *validation) val_texts.push_back(s.ingredient_text);
  auto val_rows = vectorizer.transform_batch(val_texts, cfg.workers);
  auto val_labels = detail::label_map(*validation);

  double best_score = -1.0;
  for (double alpha : cfg.alpha_grid) {
    auto rc = cfg.ridge;
    rc.alpha = alpha;
    auto model = regression::train(rows, labels, cfg.targets, rc, cfg.workers);
    model.vectorizer_fingerprint = vectorizer.fingerprint();
    PredictionMap preds;
    for (size_t i = 0; i < validation->size(); ++i) {
      preds[(*validation)[i].id] = regression::predict(model, val_rows[i]);
    }
    auto report = eval::evaluate(preds, val_labels, rules);
    double score = detail::mean_accuracy(report);
    out.grid.emplace_back(alpha, report);
    if (score > best_score) {
      best_score = score;
      out.chosen_alpha = alpha;
      out.pipeline = {vectorizer, std::move(model)};
    }
  }
  return out;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Recipe nutrient estimation toolkit", "nutriest"};
    app.require_subcommand(1);
    app.add_option("--config", config_path_, "Pipeline config json (flags override it)");
    app.add_option("--workers", workers_, "Worker threads for batch stages")->check(CLI::PositiveNumber);

    auto* prepare = app.add_subcommand("prepare", "Extract, deduplicate and split a raw prompt/answer file");
    prepare->add_option("--in", in_, "Raw input file")->required();
    prepare->add_option("--format", format_, "jsonl or csv");
    prepare->add_option("--out", out_dir_, "Output directory")->required();
    prepare->add_option("--ratio", ratio_, "Train fraction in (0, 1)");
    prepare->add_option("--seed", seed_, "Shuffle seed");

    auto* train = app.add_subcommand("train", "Fit TF-IDF + ridge and save the model");
    train->add_option("--train", train_path_, "Training json-lines")->required();
    train->add_option("--out", model_path_, "Model file to write")->required();
    auto* alpha_opt = train->add_option("--alpha", alpha_, "Ridge penalty");
    train->add_option("--alpha-grid", alpha_grid_, "Comma-separated alphas to select from on --val")
        ->excludes(alpha_opt);
    train->add_option("--val", val_path_, "Validation json-lines for alpha selection");
    train->add_option("--rules", rules_path_, "Tolerance rules json");
    train->add_option("--targets", targets_, "Comma-separated nutrients to train");

    auto* predict = app.add_subcommand("predict", "Predict with a trained model");
    predict->add_option("--model", model_path_, "Model file")->required();
    predict->add_option("--in", in_, "Recipes json-lines")->required();
    predict->add_option("--out", out_path_, "Predictions json-lines")->required();

    auto* llm_predict = app.add_subcommand("llm-predict", "Few-shot direct inference through a chat endpoint");
    llm_predict->add_option("--endpoint", endpoint_, "Endpoint profile")->required();
    llm_predict->add_option("--in", in_, "Recipes json-lines")->required();
    llm_predict->add_option("--shots", shots_path_, "Few-shot bank json-lines (default: built-in 2-shot)");
    llm_predict->add_option("--k", shots_k_, "Exemplars to use from the bank");
    llm_predict->add_option("--out", out_path_, "Predictions json-lines")->required();
    llm_predict->add_option("--cache", cache_path_, "Transcript cache json-lines");

    auto* refine = app.add_subcommand("refine", "LLM refinement of baseline predictions");
    refine->add_option("--endpoint", endpoint_, "Endpoint profile")->required();
    refine->add_option("--pred", pred_path_, "Baseline predictions")->required();
    refine->add_option("--in", in_, "Recipes json-lines")->required();
    refine->add_option("--out", out_path_, "Refined predictions")->required();
    refine->add_option("--cache", cache_path_, "Transcript cache json-lines");

    auto* merge = app.add_subcommand("merge", "Replace a set of ids in one prediction file with another's");
    merge->add_option("--base", base_path_, "Base predictions")->required();
    merge->add_option("--override", override_path_, "Override predictions")->required();
    merge->add_option("--ids", ids_path_, "Ids to take from the override, one per line")->required();
    merge->add_option("--out", out_path_, "Merged predictions")->required();

    auto* evaluate = app.add_subcommand("evaluate", "Tolerance-band accuracy of predictions");
    evaluate->add_option("--pred", pred_path_, "Predictions json-lines")->required();
    evaluate->add_option("--labels", labels_path_, "Labeled recipes json-lines")->required();
    evaluate->add_option("--rules", rules_path_, "Tolerance rules json (default: built-in EU bands)");
    evaluate->add_option("--nutrients", nutrients_, "Comma-separated nutrients to score");
    evaluate->add_option("--boundary", boundary_, "lower_exclusive or upper_inclusive");
    evaluate->add_option("--json-out", json_out_, "Also write the machine-readable report here");

    auto* bench = app.add_subcommand("bench", "Per-sample prediction latency");
    bench->add_option("--model", model_path_, "Model file")->required();
    bench->add_option("--in", in_, "Recipes json-lines")->required();
    bench->add_option("--warmup", warmup_, "Unmeasured warmup calls");

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out_, err_);
      return 2;
    }

    try {
      cfg_ = config_path_.empty() ? PipelineConfig{} : PipelineConfig::load(config_path_);
      if (workers_) cfg_.workers = *workers_;
      if (prepare->parsed()) return run_prepare();
      if (train->parsed()) return run_train();
      if (predict->parsed()) return run_predict();
      if (llm_predict->parsed()) return run_llm_predict();
      if (refine->parsed()) return run_refine();
      if (merge->parsed()) return run_merge();
      if (evaluate->parsed()) return run_evaluate();
      if (bench->parsed()) return run_bench();
    } catch (const UsageError& e) {
      err_ << "usage error: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return 1;
    }
    return 2;
  }

 private:
  int run_prepare() {
    auto format = dataset::parse_format(format_.value_or(cfg_.format));
    double ratio = ratio_.value_or(cfg_.split_ratio);
    std::uint64_t seed = seed_.value_or(cfg_.split_seed);
    if (!(ratio > 0.0 && ratio < 1.0)) throw UsageError("--ratio must lie in (0, 1)");
    detail::require_file(in_, "--in");

    auto raw = dataset::load_raw(in_, format);
    auto recipes = dataset::to_recipes(raw);
    auto unique = dataset::deduplicate(recipes);
    auto parts = dataset::split(unique, ratio, seed);
    size_t flagged = 0;
    for (const auto& s : unique) {
      if (s.labels && s.labels->saturates_exceed_fat()) ++flagged;
    }

    std::filesystem::create_directories(out_dir_);
    auto dir = std::filesystem::path(out_dir_);
    dataset::write_recipes((dir / "train.jsonl").string(), parts.train);
    dataset::write_recipes((dir / "val.jsonl").string(), parts.validation);
    out_ << "records: " << raw.size() << '\n'
         << "unique: " << unique.size() << '\n'
         << "train: " << parts.train.size() << '\n'
         << "validation: " << parts.validation.size() << '\n'
         << "saturates>fat rows: " << flagged << '\n';
    return 0;
  }

  int run_train() {
    if (alpha_) cfg_.ridge.alpha = *alpha_;
    if (alpha_grid_) cfg_.alpha_grid = detail::parse_alpha_grid(*alpha_grid_);
    if (alpha_) cfg_.alpha_grid.clear();
    if (rules_path_) cfg_.rules_path = *rules_path_;
    if (targets_) cfg_.targets = detail::parse_nutrient_list(*targets_);
    cfg_.ridge.validate();
    if (!cfg_.alpha_grid.empty() && !val_path_) throw UsageError("--alpha-grid requires --val");
    detail::require_file(train_path_, "--train");
    if (val_path_) detail::require_file(*val_path_, "--val");

    auto train = detail::read_labeled(train_path_);
    if (train.empty()) throw ArgumentError("'" + train_path_ + "' holds no samples");
    std::optional<std::vector<dataset::RecipeSample>> val;
    if (val_path_) val = detail::read_labeled(*val_path_);
    auto rules = detail::load_rules(cfg_);

    auto outcome = train_with_grid(train, val ? &*val : nullptr, cfg_, rules);
    for (const auto& [alpha, report] : outcome.grid) {
      out_ << "alpha " << alpha << ":";
      for (const auto& s : report.scores) {
        out_ << ' ' << nutrient_name(s.nutrient) << '=' << text::format_fixed2(s.accuracy_percent);
      }
      out_ << " mean=" << text::format_fixed2(detail::mean_accuracy(report)) << '\n';
    }
    for (const auto& w : outcome.pipeline.model.warnings) err_ << "warning: " << w << '\n';
    regression::save_pipeline(outcome.pipeline, model_path_);
    out_ << "alpha: " << outcome.chosen_alpha << '\n'
         << "features: " << outcome.pipeline.vectorizer.word().size() << " word + "
         << outcome.pipeline.vectorizer.chars().size() << " char\n"
         << "model: " << model_path_ << '\n';
    if (val && outcome.grid.empty()) {
      auto preds = detail::predict_all(outcome.pipeline, *val, cfg_.workers);
      out_ << eval::evaluate(to_map(preds), detail::label_map(*val), rules).to_table();
    }
    return 0;
  }

  int run_predict() {
    detail::require_file(model_path_, "--model");
    detail::require_file(in_, "--in");
    auto pipeline = regression::load_pipeline(model_path_);
    auto samples = dataset::read_recipes(in_);
    auto preds = detail::predict_all(pipeline, samples, cfg_.workers);
    write_predictions(out_path_, preds);
    out_ << "predictions: " << preds.size() << " -> " << out_path_ << '\n';
    return 0;
  }

  int run_llm_predict() {
    auto ep = detail::select_endpoint(cfg_, endpoint_);
    detail::require_file(in_, "--in");
    llm::FewShotBank bank = llm::default_fewshot_bank();
    if (shots_path_) {
      detail::require_file(*shots_path_, "--shots");
      bank = llm::FewShotBank::parse_jsonl(text::read_file(*shots_path_));
    }
    if (shots_k_) bank.k = *shots_k_;
    bank.validate();
    auto samples = dataset::read_recipes(in_);

    std::vector<std::pair<std::string, std::string>> queries;
    for (const auto& s : samples) queries.emplace_back(s.id, llm::direct_query_text(s.ingredient_text));
    std::optional<llm::TranscriptCache> cache;
    if (cache_path_) cache.emplace(*cache_path_);
    llm::ChatClient client(ep);
    auto outcome = llm::direct_predict_batch(queries, bank, client, cache ? &*cache : nullptr, cfg_.generation);

    std::vector<IdPrediction> rows;
    for (size_t i = 0; i < samples.size(); ++i) {
      if (outcome.predictions[i]) rows.push_back({samples[i].id, *outcome.predictions[i]});
    }
    for (const auto& f : outcome.failures) err_ << "failed: " << f << '\n';
    write_predictions(out_path_, rows);
    out_ << "predictions: " << rows.size() << ", failures: " << outcome.failures.size() << '\n';
    return 0;
  }

  int run_refine() {
    auto ep = detail::select_endpoint(cfg_, endpoint_);
    detail::require_file(pred_path_, "--pred");
    detail::require_file(in_, "--in");
    auto base = read_predictions(pred_path_);
    std::map<std::string, std::string> texts;
    for (const auto& s : dataset::read_recipes(in_)) texts[s.id] = s.ingredient_text;
    for (const auto& row : base) {
      if (!texts.contains(row.id)) throw ArgumentError("prediction id '" + row.id + "' not found in --in");
    }

    std::optional<llm::TranscriptCache> cache;
    if (cache_path_) cache.emplace(*cache_path_);
    llm::ChatClient client(ep);
    std::vector<IdPrediction> out(base.size());
    std::vector<std::string> failures(base.size());
    parallel_for(base.size(), static_cast<size_t>(ep.max_concurrency), [&](size_t i) {
      const auto& row = base[i];
      const auto& text_in = texts[row.id];
      out[i] = {row.id, row.prediction};
      try {
        auto req = llm::render_refine_prompt(text_in, row.prediction, cfg_.generation);
        auto refined = llm::parse_refine_json(llm::cached_complete(client, req, row.id, cache ? &*cache : nullptr));
        if (refined.valid()) out[i].prediction = refined;
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    });
    size_t n_failed = 0;
    for (size_t i = 0; i < base.size(); ++i) {
      if (failures[i].empty()) continue;
      ++n_failed;
      err_ << "kept baseline for " << base[i].id << ": " << failures[i] << '\n';
    }
    write_predictions(out_path_, out);
    out_ << "refined: " << base.size() - n_failed << ", kept baseline: " << n_failed << '\n';
    return 0;
  }

  int run_merge() {
    detail::require_file(base_path_, "--base");
    detail::require_file(override_path_, "--override");
    detail::require_file(ids_path_, "--ids");
    auto base_rows = read_predictions(base_path_);
    auto base = to_map(base_rows);
    auto overrides = to_map(read_predictions(override_path_));
    std::set<std::string> ids;
    for (const auto& line : text::nonblank_lines(text::read_file(ids_path_))) ids.insert(std::string(text::trim(line)));

    auto merged = llm::merge_predictions(base, overrides, ids);
    std::vector<IdPrediction> rows;
    rows.reserve(base_rows.size());
    for (const auto& row : base_rows) rows.push_back({row.id, merged.at(row.id)});
    write_predictions(out_path_, rows);
    out_ << "merged: " << rows.size() << " predictions, " << ids.size() << " from override\n";
    return 0;
  }

  int run_evaluate() {
    if (rules_path_) cfg_.rules_path = *rules_path_;
    if (boundary_) cfg_.boundary = *boundary_;
    std::vector<Nutrient> nutrients(kScoredNutrients.begin(), kScoredNutrients.end());
    if (nutrients_) nutrients = detail::parse_nutrient_list(*nutrients_);
    detail::require_file(pred_path_, "--pred");
    detail::require_file(labels_path_, "--labels");

    auto rules = detail::load_rules(cfg_);
    auto preds = to_map(read_predictions(pred_path_));
    auto labels = detail::label_map(detail::read_labeled(labels_path_));
    auto report = eval::evaluate(preds, labels, rules, nutrients);
    out_ << report.to_table();
    out_ << report.to_json().dump() << '\n';
    if (json_out_) text::write_file(*json_out_, report.to_json().dump(2) + "\n");
    return 0;
  }

  int run_bench() {
    detail::require_file(model_path_, "--model");
    detail::require_file(in_, "--in");
    auto pipeline = regression::load_pipeline(model_path_);
    auto samples = dataset::read_recipes(in_);
    if (samples.empty()) throw ArgumentError("'" + in_ + "' holds no samples");
    auto stats = eval::bench_latency<dataset::RecipeSample>(
        [&](const dataset::RecipeSample& s) { return pipeline.predict(s.ingredient_text); },
        std::span<const dataset::RecipeSample>(samples), warmup_);
    out_ << std::fixed << std::setprecision(4) << "samples: " << stats.n << '\n'
         << "mean_ms: " << stats.mean * 1e3 << '\n'
         << "median_ms: " << stats.median * 1e3 << '\n'
         << "p95_ms: " << stats.p95 * 1e3 << '\n'
         << "total_s: " << stats.wall_clock_total << '\n';
    return 0;
  }

  std::ostream& out_;
  std::ostream& err_;
  PipelineConfig cfg_;

  std::string config_path_;
  std::optional<size_t> workers_;
  std::string in_;
  std::optional<std::string> format_;
  std::string out_dir_;
  std::optional<double> ratio_;
  std::optional<std::uint64_t> seed_;
  std::string train_path_;
  std::string model_path_;
  std::optional<double> alpha_;
  std::optional<std::string> alpha_grid_;
  std::optional<std::string> val_path_;
  std::optional<std::string> rules_path_;
  std::optional<std::string> targets_;
  std::string out_path_;
  std::string endpoint_;
  std::optional<std::string> shots_path_;
  std::optional<size_t> shots_k_;
  std::optional<std::string> cache_path_;
  std::string pred_path_;
  std::string base_path_;
  std::string override_path_;
  std::string ids_path_;
  std::string labels_path_;
  std::optional<std::string> nutrients_;
  std::optional<std::string> boundary_;
  std::optional<std::string> json_out_;
  size_t warmup_ = 100;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return Runner(out, err).run(argc, argv);
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<const char*> argv;
  argv.push_back("nutriest");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace nutriest::cli
