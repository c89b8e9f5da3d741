#pragma once

// Multi-target ridge regression over sparse features, solved per target with
// Jacobi-preconditioned conjugate gradient on the regularized normal
// equations.

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nutriest/common.hpp"
#include "nutriest/features.hpp"
#include "nutriest/nutrients.hpp"

namespace nutriest::regression {

using features::SparseVector;

struct RidgeConfig {
  double alpha = 1.0;
  bool fit_intercept = true;
  double solver_tol = 1e-10;  // 1e-8 leaves ~1e-6 coordinate error on ill-conditioned small systems
  int max_iterations = 1000;

  void validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ArgumentError("alpha must be > 0");
    if (!(solver_tol > 0.0)) throw ArgumentError("solver_tol must be > 0");
    if (max_iterations < 1) throw ArgumentError("max_iterations must be >= 1");
  }

  nlohmann::json to_json() const {
    return {{"alpha", alpha}, {"fit_intercept", fit_intercept}, {"solver_tol", solver_tol},
            {"max_iterations", max_iterations}};
  }

  static RidgeConfig from_json(const nlohmann::json& j) { return from_json(j, RidgeConfig{}); }

  static RidgeConfig from_json(const nlohmann::json& j, RidgeConfig base) {
    try {
      if (j.contains("alpha")) base.alpha = j.at("alpha").get<double>();
      if (j.contains("fit_intercept")) base.fit_intercept = j.at("fit_intercept").get<bool>();
      if (j.contains("solver_tol")) base.solver_tol = j.at("solver_tol").get<double>();
      if (j.contains("max_iterations")) base.max_iterations = j.at("max_iterations").get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("ridge config: ") + e.what());
    }
    base.validate();
    return base;
  }

  bool operator==(const RidgeConfig&) const = default;
};

/// Row-compressed design matrix built from sparse rows of equal dim.
class CsrMatrix {
 public:
  explicit CsrMatrix(std::span<const SparseVector> rows) {
    if (rows.empty()) throw ArgumentError("design matrix needs at least one row");
    cols_ = rows.front().dim;
    row_ptr_.reserve(rows.size() + 1);
    row_ptr_.push_back(0);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].dim != cols_) {
        throw ArgumentError("row " + std::to_string(r) + " has dim " + std::to_string(rows[r].dim) +
                            ", expected " + std::to_string(cols_));
      }
      col_.insert(col_.end(), rows[r].indices.begin(), rows[r].indices.end());
      val_.insert(val_.end(), rows[r].values.begin(), rows[r].values.end());
      row_ptr_.push_back(col_.size());
    }
  }

  size_t rows() const { return row_ptr_.size() - 1; }
  size_t cols() const { return cols_; }

  // out[r] = x_r . w + bias
  void multiply(std::span<const double> w, double bias, std::span<double> out) const {
    for (size_t r = 0; r < rows(); ++r) {
      double s = bias;
      for (size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += val_[k] * w[col_[k]];
      out[r] = s;
    }
  }

  // out = X^T u (out must be zeroed by the caller)
  void multiply_transpose(std::span<const double> u, std::span<double> out) const {
    for (size_t r = 0; r < rows(); ++r) {
      double ur = u[r];
      if (ur == 0.0) continue;
      for (size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out[col_[k]] += val_[k] * ur;
    }
  }

  std::vector<double> column_squared_norms() const {
    std::vector<double> out(cols_, 0.0);
    for (size_t k = 0; k < val_.size(); ++k) out[col_[k]] += val_[k] * val_[k];
    return out;
  }

 private:
  size_t cols_ = 0;
  std::vector<size_t> row_ptr_;
  std::vector<std::uint32_t> col_;
  std::vector<double> val_;
};

struct SolveResult {
  std::vector<double> weights;
  double intercept = 0.0;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Minimizes ||Xw + b - y||^2 + alpha ||w||^2. With fit_intercept the bias b
/// is unpenalized; it is eliminated exactly by centering X and y implicitly
/// (b = mean(y) - mean(X) w), which keeps the system well conditioned and X
/// sparse. Stops once ||r|| <= tol * ||rhs|| on the normal equations or after
/// max_iterations.
inline SolveResult solve_ridge(const CsrMatrix& x, std::span<const double> y, const RidgeConfig& config) {
  config.validate();
  if (y.size() != x.rows()) throw ArgumentError("label count does not match row count");
  const size_t d = x.cols();
  const size_t n = x.rows();
  const bool bias = config.fit_intercept;
  const size_t m = d;

  // Column means of X and the mean of y; zero when there is no intercept.
  std::vector<double> mu(d, 0.0);
  double y_mean = 0.0;
  if (bias && n > 0) {
    std::vector<double> ones(n, 1.0 / static_cast<double>(n));
    x.multiply_transpose(ones, mu);
    for (double v : y) y_mean += v;
    y_mean /= static_cast<double>(n);
  }
  auto mean_dot = [&](std::span<const double> z) {
    double s = 0.0;
    for (size_t j = 0; j < d; ++j) s += mu[j] * z[j];
    return s;
  };
  // out = Xc^T v with Xc = X - 1 mu^T.
  auto centered_transpose = [&](std::span<const double> v, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    x.multiply_transpose(v, out);
    if (!bias) return;
    double s = 0.0;
    for (double e : v) s += e;
    for (size_t j = 0; j < d; ++j) out[j] -= mu[j] * s;
  };

  // A w = Xc^T Xc w + alpha w.
  auto apply = [&](std::span<const double> z, std::span<double> out, std::vector<double>& scratch) {
    x.multiply(z, bias ? -mean_dot(z) : 0.0, scratch);
    centered_transpose(scratch, out);
    for (size_t j = 0; j < d; ++j) out[j] += config.alpha * z[j];
  };

  std::vector<double> rhs(m, 0.0);
  {
    std::vector<double> yc(y.begin(), y.end());
    for (double& v : yc) v -= y_mean;
    centered_transpose(yc, rhs);
  }

  std::vector<double> precond(m);
  auto colsq = x.column_squared_norms();
  for (size_t j = 0; j < d; ++j) {
    double centered = colsq[j] - static_cast<double>(n) * mu[j] * mu[j];
    precond[j] = 1.0 / (std::max(centered, 0.0) + config.alpha);
  }

  auto dot = [](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  SolveResult result;
  std::vector<double> z(m, 0.0);
  const double rhs_norm = std::sqrt(dot(rhs, rhs));
  if (rhs_norm == 0.0) {
    result.weights.assign(d, 0.0);
    result.intercept = y_mean;
    result.converged = true;
    return result;
  }

  std::vector<double> r = rhs;
  std::vector<double> s(m);
  for (size_t i = 0; i < m; ++i) s[i] = precond[i] * r[i];
  std::vector<double> p = s;
  std::vector<double> ap(m);
  std::vector<double> scratch(n);
  double rs = dot(r, s);
  double rel = 1.0;

  int it = 0;
  while (it < config.max_iterations) {
    apply(p, ap, scratch);
    double pap = dot(p, ap);
    if (!(pap > 0.0)) break;
    double step = rs / pap;
    for (size_t i = 0; i < m; ++i) {
      z[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    ++it;
    rel = std::sqrt(dot(r, r)) / rhs_norm;
    if (rel <= config.solver_tol) break;
    for (size_t i = 0; i < m; ++i) s[i] = precond[i] * r[i];
    double rs_next = dot(r, s);
    double beta = rs_next / rs;
    rs = rs_next;
    for (size_t i = 0; i < m; ++i) p[i] = s[i] + beta * p[i];
  }

  result.weights = std::move(z);
  result.intercept = bias ? y_mean - mean_dot(result.weights) : 0.0;
  result.iterations = it;
  result.relative_residual = rel;
  result.converged = rel <= config.solver_tol;
  return result;
}

struct RidgeModel {
  std::vector<Nutrient> targets;
  std::vector<std::vector<double>> weights;  // one row of feature_dim per target
  std::vector<double> intercepts;
  size_t feature_dim = 0;
  RidgeConfig config;
  std::string vectorizer_fingerprint;
  std::vector<int> iterations;
  std::vector<bool> converged;
  std::vector<std::string> warnings;

  bool operator==(const RidgeModel&) const = default;
};

inline std::vector<Nutrient> default_targets() {
  return {kScoredNutrients.begin(), kScoredNutrients.end()};
}

/// Trains one ridge problem per target (in parallel). Non-convergence is
/// recorded in `warnings`, not raised.
inline RidgeModel train(std::span<const SparseVector> rows, std::span<const NutrientVector> labels,
                        std::span<const Nutrient> targets, const RidgeConfig& config,
                        size_t workers = default_workers()) {
  config.validate();
  if (rows.empty()) throw ArgumentError("training needs at least one row");
  if (rows.size() != labels.size()) {
    throw ArgumentError("row count " + std::to_string(rows.size()) + " does not match label count " +
                        std::to_string(labels.size()));
  }
  if (targets.empty()) throw ArgumentError("no targets to train");
  CsrMatrix x(rows);

  RidgeModel model;
  model.targets.assign(targets.begin(), targets.end());
  model.feature_dim = x.cols();
  model.config = config;
  model.weights.resize(targets.size());
  model.intercepts.resize(targets.size());
  model.iterations.resize(targets.size());
  model.converged.resize(targets.size());

  std::vector<SolveResult> results(targets.size());
  parallel_for(targets.size(), workers, [&](size_t t) {
    std::vector<double> y(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) y[i] = labels[i].get(targets[t]);
    results[t] = solve_ridge(x, y, config);
  });
  for (size_t t = 0; t < targets.size(); ++t) {
    model.weights[t] = std::move(results[t].weights);
    model.intercepts[t] = results[t].intercept;
    model.iterations[t] = results[t].iterations;
    model.converged[t] = results[t].converged;
    if (!results[t].converged) {
      model.warnings.push_back("target '" + std::string(nutrient_name(targets[t])) +
                               "' did not converge: relative residual " +
                               std::to_string(results[t].relative_residual) + " after " +
                               std::to_string(results[t].iterations) + " iterations");
    }
  }
  return model;
}

/// Per-target x . w + b, unclamped, in model.targets order.
inline std::vector<double> predict_raw(const RidgeModel& model, const SparseVector& x) {
  if (x.dim != model.feature_dim) {
    throw ArgumentError("feature dim " + std::to_string(x.dim) + " does not match model dim " +
                        std::to_string(model.feature_dim));
  }
  std::vector<double> out(model.targets.size());
  for (size_t t = 0; t < model.targets.size(); ++t) out[t] = x.dot(model.weights[t]) + model.intercepts[t];
  return out;
}

/// Scored nutrients, clamped at 0 from below. The model must cover all four.
inline NutrientPrediction predict(const RidgeModel& model, const SparseVector& x) {
  auto raw = predict_raw(model, x);
  NutrientPrediction p;
  for (Nutrient n : kScoredNutrients) {
    auto it = std::find(model.targets.begin(), model.targets.end(), n);
    if (it == model.targets.end()) {
      throw ArgumentError("model has no target '" + std::string(nutrient_name(n)) + "'");
    }
    p.set(n, std::max(0.0, raw[static_cast<size_t>(it - model.targets.begin())]));
  }
  return p;
}

// Model file layout (all integers little-endian):
//   "NUTRIRDG" | u32 format_version | u64 header_len | header json
//   | u64 vectorizer_len | vectorizer json (may be empty)
//   | targets x feature_dim f64 weights | u64 FNV-1a of all preceding bytes
inline constexpr std::string_view kModelMagic = "NUTRIRDG";
inline constexpr std::uint32_t kModelFormatVersion = 1;

namespace detail {

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::string_view take(size_t n) {
    if (n > data_.size() - pos_) throw LoadError("model file is truncated");
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint64_t u64() {
    auto b = take(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[static_cast<size_t>(i)]);
    return v;
  }

  std::uint32_t u32() {
    auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[static_cast<size_t>(i)]);
    return v;
  }

  size_t position() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }

 private:
  std::string_view data_;
  size_t pos_ = 0;
};

}  // namespace detail

inline std::string serialize_model(const RidgeModel& model, std::string_view vectorizer_json = {}) {
  nlohmann::json targets = nlohmann::json::array();
  for (Nutrient n : model.targets) targets.push_back(nutrient_name(n));
  nlohmann::json header = {
      {"format_version", kModelFormatVersion},
      {"targets", targets},
      {"feature_dim", model.feature_dim},
      {"intercepts", model.intercepts},
      {"config", model.config.to_json()},
      {"vectorizer_fingerprint", model.vectorizer_fingerprint},
      {"iterations", model.iterations},
      {"converged", model.converged},
      {"warnings", model.warnings},
  };
  std::string head = header.dump();

  std::string out(kModelMagic);
  detail::put_u32(out, kModelFormatVersion);
  detail::put_u64(out, head.size());
  out += head;
  detail::put_u64(out, vectorizer_json.size());
  out += vectorizer_json;
  out.reserve(out.size() + model.weights.size() * model.feature_dim * 8 + 8);
  for (const auto& w : model.weights) {
    if (w.size() != model.feature_dim) throw ArgumentError("weight row length differs from feature_dim");
    for (double v : w) detail::put_u64(out, std::bit_cast<std::uint64_t>(v));
  }
  detail::put_u64(out, fnv1a64(out));
  return out;
}

struct LoadedModel {
  RidgeModel model;
  std::string vectorizer_json;
};

inline LoadedModel deserialize_model(std::string_view data) {
  if (data.size() < kModelMagic.size() + 4 + 8 || data.substr(0, kModelMagic.size()) != kModelMagic) {
    throw LoadError("not a nutriest model file");
  }
  detail::Reader reader(data);
  reader.take(kModelMagic.size());
  auto version = reader.u32();
  if (version != kModelFormatVersion) {
    throw LoadError("model format_version " + std::to_string(version) + " is not supported (expected " +
                    std::to_string(kModelFormatVersion) + ")");
  }
  auto head = reader.take(reader.u64());
  auto vec = reader.take(reader.u64());

  LoadedModel out;
  out.vectorizer_json = std::string(vec);
  auto& m = out.model;
  try {
    auto h = nlohmann::json::parse(head);
    for (const auto& t : h.at("targets")) m.targets.push_back(parse_nutrient(t.get<std::string>()));
    m.feature_dim = h.at("feature_dim").get<size_t>();
    m.intercepts = h.at("intercepts").get<std::vector<double>>();
    m.config = RidgeConfig::from_json(h.at("config"));
    m.vectorizer_fingerprint = h.at("vectorizer_fingerprint").get<std::string>();
    m.iterations = h.at("iterations").get<std::vector<int>>();
    m.converged = h.at("converged").get<std::vector<bool>>();
    m.warnings = h.at("warnings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("model header: ") + e.what());
  } catch (const ArgumentError& e) {
    throw LoadError(std::string("model header: ") + e.what());
  } catch (const ParseError& e) {
    throw LoadError(std::string("model header: ") + e.what());
  }
  if (m.intercepts.size() != m.targets.size()) throw LoadError("model header: intercept count mismatch");

  size_t expected = m.targets.size() * m.feature_dim * 8 + 8;
  if (reader.remaining() != expected) throw LoadError("model file is truncated or has trailing bytes");
  m.weights.assign(m.targets.size(), std::vector<double>(m.feature_dim));
  for (auto& row : m.weights) {
    for (double& v : row) {
      v = std::bit_cast<double>(reader.u64());
      if (!std::isfinite(v)) throw LoadError("model contains non-finite weights");
    }
  }
  size_t body_len = reader.position();
  if (reader.u64() != fnv1a64(data.substr(0, body_len))) throw LoadError("model checksum mismatch");
  return out;
}

inline void save_model(const RidgeModel& model, const std::string& path, std::string_view vectorizer_json = {}) {
  text::write_file(path, serialize_model(model, vectorizer_json));
}

inline RidgeModel load_model(const std::string& path) { return deserialize_model(text::read_file(path)).model; }

/// A vectorizer plus the model trained on its output, stored in one file.
struct TrainedPipeline {
  features::CombinedVectorizer vectorizer;
  RidgeModel model;

  /// Refuses to run when the model was trained against another vectorizer.
  NutrientPrediction predict(std::string_view ingredient_text) const {
    if (model.vectorizer_fingerprint != vectorizer.fingerprint()) {
      throw ArgumentError("vectorizer fingerprint " + vectorizer.fingerprint() +
                          " does not match the model's " + model.vectorizer_fingerprint);
    }
    return regression::predict(model, vectorizer.transform(ingredient_text));
  }
};

inline void save_pipeline(const TrainedPipeline& p, const std::string& path) {
  save_model(p.model, path, p.vectorizer.to_json().dump());
}

inline TrainedPipeline load_pipeline(const std::string& path) {
  auto loaded = deserialize_model(text::read_file(path));
  if (loaded.vectorizer_json.empty()) throw LoadError("model file '" + path + "' carries no vectorizer");
  TrainedPipeline p;
  try {
    p.vectorizer = features::CombinedVectorizer::from_json(nlohmann::json::parse(loaded.vectorizer_json));
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("embedded vectorizer: ") + e.what());
  }
  p.model = std::move(loaded.model);
  if (p.model.vectorizer_fingerprint != p.vectorizer.fingerprint()) {
    throw LoadError("model file '" + path + "': vectorizer fingerprint mismatch");
  }
  if (p.model.feature_dim != p.vectorizer.dim()) throw LoadError("model/vectorizer dimension mismatch");
  return p;
}

/// Fits the vectorizer on `train` texts, then the ridge model on its output.
inline TrainedPipeline train_pipeline(std::span<const std::string> texts, std::span<const NutrientVector> labels,
                                      const features::VectorizerConfig& word_config,
                                      const features::VectorizerConfig& char_config,
                                      std::span<const Nutrient> targets, const RidgeConfig& config,
                                      size_t workers = default_workers()) {
  TrainedPipeline p;
  p.vectorizer = features::CombinedVectorizer::fit(texts, word_config, char_config);
  auto rows = p.vectorizer.transform_batch(texts, workers);
  p.model = train(rows, labels, targets, config, workers);
  p.model.vectorizer_fingerprint = p.vectorizer.fingerprint();
  return p;
}

}  // namespace nutriest::regression
