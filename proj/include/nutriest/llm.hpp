#pragma once

// LLM tier: prompt rendering for direct inference and refinement, a
// chat-completions client with retry and bounded concurrency, output parsing,
// and prediction-set merging.

#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <condition_variable>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "nutriest/common.hpp"
#include "nutriest/nutrients.hpp"

namespace nutriest::llm {

/// Retries exhausted or the endpoint could not be reached.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Terminal non-2xx status, a malformed response, or a missing credential.
class EndpointError : public Error {
 public:
  EndpointError(int status, const std::string& what) : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_ = 0;
};

enum class Role { user, assistant };

struct ChatMessage {
  Role role = Role::user;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
  std::string system;
  std::vector<ChatMessage> messages;  // alternating, user first and last
  double temperature = 0.0;
  int max_tokens = 256;

  void validate() const {
    if (system.empty()) throw ArgumentError("chat request needs a system message");
    if (messages.empty() || messages.back().role != Role::user) {
      throw ArgumentError("chat request must end with a user message");
    }
    for (size_t i = 0; i < messages.size(); ++i) {
      Role expected = i % 2 == 0 ? Role::user : Role::assistant;
      if (messages[i].role != expected) throw ArgumentError("chat messages must alternate user/assistant");
    }
    if (temperature < 0.0) throw ArgumentError("temperature must be >= 0");
    if (max_tokens < 1) throw ArgumentError("max_tokens must be >= 1");
  }

  nlohmann::json to_json(const std::string& model) const {
    nlohmann::json msgs = nlohmann::json::array();
    msgs.push_back({{"role", "system"}, {"content", system}});
    for (const auto& m : messages) {
      msgs.push_back({{"role", m.role == Role::user ? "user" : "assistant"}, {"content", m.content}});
    }
    return {{"model", model}, {"messages", msgs}, {"temperature", temperature}, {"max_tokens", max_tokens}};
  }

  /// All turns joined as "role: content" blocks; for logs and tests.
  std::string transcript() const {
    std::string out = "system: " + system;
    for (const auto& m : messages) {
      out += m.role == Role::user ? "\nuser: " : "\nassistant: ";
      out += m.content;
    }
    return out;
  }

  bool operator==(const ChatRequest&) const = default;
};

struct EndpointConfig {
  std::string base_url = "http://127.0.0.1:8080/v1";
  std::string model_name;
  std::string api_key_env;  // empty: no credential sent
  double timeout_seconds = 120.0;
  int max_retries = 3;
  int max_concurrency = 4;
  double initial_backoff_seconds = 0.5;
  double max_backoff_seconds = 8.0;

  void validate() const {
    if (base_url.empty()) throw ArgumentError("endpoint base_url is empty");
    if (!(timeout_seconds > 0.0)) throw ArgumentError("endpoint timeout must be > 0");
    if (max_retries < 0) throw ArgumentError("endpoint max_retries must be >= 0");
    if (max_concurrency < 1) throw ArgumentError("endpoint max_concurrency must be >= 1");
    if (initial_backoff_seconds < 0.0 || max_backoff_seconds < 0.0) throw ArgumentError("backoff must be >= 0");
  }

  static EndpointConfig from_json(const nlohmann::json& j) {
    EndpointConfig c;
    try {
      c.base_url = j.at("base_url").get<std::string>();
      c.model_name = j.value("model", std::string());
      c.api_key_env = j.value("api_key_env", std::string());
      c.timeout_seconds = j.value("timeout", c.timeout_seconds);
      c.max_retries = j.value("max_retries", c.max_retries);
      c.max_concurrency = j.value("max_concurrency", c.max_concurrency);
      c.initial_backoff_seconds = j.value("initial_backoff", c.initial_backoff_seconds);
      c.max_backoff_seconds = j.value("max_backoff", c.max_backoff_seconds);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("endpoint config: ") + e.what());
    }
    c.validate();
    return c;
  }
};

/// Profiles available without a config file.
inline std::map<std::string, EndpointConfig> builtin_endpoint_profiles() {
  std::map<std::string, EndpointConfig> out;
  EndpointConfig local;
  local.base_url = "http://127.0.0.1:8080/v1";
  local.model_name = "gemma-3-27b-it";
  out["local"] = local;
  EndpointConfig gemini;
  gemini.base_url = "https://generativelanguage.googleapis.com/v1beta/openai";
  gemini.model_name = "gemini-2.5-flash";
  gemini.api_key_env = "GEMINI_API_KEY";
  out["gemini"] = gemini;
  return out;
}

// ---------------------------------------------------------------------------
// Prompts

inline constexpr std::string_view kDirectSystemPrompt =
    "You are a specialized nutritional data analyst. Your task is to calculate the nutrient profile "
    "per 100g for recipes provided in [INST] format.\n"
    "\n"
    "Instructions:\n"
    "Unit Conversion: Convert all units (e.g., pounds, cups, tablespoons, ml) to grams (g) using "
    "standard conversion factors (e.g., 1 cup water \xE2\x89\x88 236.6g, 1 tablespoon butter \xE2\x89\x88 14.2g).\n"
    "Calculation: Sum the total weight and total nutrients of all ingredients, then normalize the "
    "values to a 100g portion.\n"
    "Output Format: You must only provide the final result in this specific format:\n"
    "Nutrient values per 100 g: fat - [value], protein - [value], saturates - [value], sugars - [value]";

/// Question wording placed before the ingredient list in direct-inference turns.
inline constexpr std::string_view kDirectQueryPrefix =
    "Identify the nutritional content per 100 grams for a recipe with the following ingredients: ";

inline std::string direct_query_text(std::string_view ingredient_text) {
  return std::string(kDirectQueryPrefix) + std::string(ingredient_text);
}

struct FewShotExemplar {
  std::string text;  // full user query, wrapped in [INST] at render time
  NutrientPrediction answer;
};

struct FewShotBank {
  std::vector<FewShotExemplar> exemplars;
  size_t k = 2;

  void validate() const {
    if (k > exemplars.size()) {
      throw ArgumentError("few-shot bank has " + std::to_string(exemplars.size()) + " exemplars, k = " +
                          std::to_string(k));
    }
    for (const auto& e : exemplars) {
      if (!e.answer.valid()) throw ArgumentError("few-shot exemplar answer must be finite and >= 0");
      if (e.text.empty()) throw ArgumentError("few-shot exemplar text is empty");
    }
  }

  /// json-lines of {"text", "fat", "protein", "saturates", "sugars"}.
  static FewShotBank parse_jsonl(std::string_view contents, std::optional<size_t> k = std::nullopt) {
    FewShotBank bank;
    size_t record = 0;
    for (const auto& line : text::nonblank_lines(contents)) {
      try {
        auto j = nlohmann::json::parse(line);
        FewShotExemplar e;
        e.text = j.at("text").get<std::string>();
        for (Nutrient n : kScoredNutrients) e.answer.set(n, j.at(std::string(nutrient_name(n))).get<double>());
        bank.exemplars.push_back(std::move(e));
      } catch (const nlohmann::json::exception& ex) {
        throw ParseError("few-shot record " + std::to_string(record) + ": " + ex.what());
      }
      ++record;
    }
    bank.k = k.value_or(std::min<size_t>(2, bank.exemplars.size()));
    bank.validate();
    return bank;
  }
};

/// The two worked examples used by default (2-shot).
inline FewShotBank default_fewshot_bank() {
  FewShotBank bank;
  bank.exemplars = {
      {direct_query_text("2 tablespoon soy sauce made from soy (tamari), 1 tablespoon peanut butter, "
                         "smooth style, without salt"),
       {8.55, 12.31, 1.72, 14.17}},
      {direct_query_text("1 cup wheat flour, 2 tbsp olive oil"), {14.20, 3.10, 2.15, 0.50}},
  };
  bank.k = 2;
  return bank;
}

inline std::string wrap_inst(std::string_view text) { return "[INST] " + std::string(text) + " [/INST]"; }

struct GenerationParams {
  double temperature = 0.0;
  int max_tokens = 256;
};

/// System instructions, the first k exemplars as user/assistant pairs, then
/// the query wrapped in [INST] ... [/INST].
inline ChatRequest render_direct_prompt(std::string_view query_text, const FewShotBank& bank,
                                        GenerationParams params = {}) {
  if (text::trim(query_text).empty()) throw ArgumentError("ingredient text is empty");
  bank.validate();
  ChatRequest req;
  req.system = std::string(kDirectSystemPrompt);
  req.temperature = params.temperature;
  req.max_tokens = params.max_tokens;
  for (size_t i = 0; i < bank.k; ++i) {
    req.messages.push_back({Role::user, wrap_inst(bank.exemplars[i].text)});
    req.messages.push_back({Role::assistant, render_prediction_answer(bank.exemplars[i].answer)});
  }
  req.messages.push_back({Role::user, wrap_inst(query_text)});
  return req;
}

inline constexpr std::string_view kRefineSystemPrompt = "You are a nutrition expert.";

/// Food text, the baseline prediction (Protein/Fat/Sugar/Saturates, two
/// decimals) and the JSON key contract.
inline ChatRequest render_refine_prompt(std::string_view ingredient_text, const NutrientPrediction& pred,
                                        GenerationParams params = {}) {
  if (!pred.valid()) throw ArgumentError("prediction to refine must be finite and >= 0");
  ChatRequest req;
  req.system = std::string(kRefineSystemPrompt);
  req.temperature = params.temperature;
  req.max_tokens = params.max_tokens;
  std::string body = "Food:\n" + std::string(ingredient_text) + "\n\nPredicted nutrients per 100g:\n";
  body += "Protein: " + text::format_fixed2(pred.protein) + "\n";
  body += "Fat: " + text::format_fixed2(pred.fat) + "\n";
  body += "Sugar: " + text::format_fixed2(pred.sugars) + "\n";
  body += "Saturates: " + text::format_fixed2(pred.saturates) + "\n\n";
  body += "Return JSON only with keys:\nprotein_g, fat_g, sugars_g, saturates_g";
  req.messages.push_back({Role::user, std::move(body)});
  return req;
}

// ---------------------------------------------------------------------------
// Output parsing

inline constexpr std::array<std::string_view, 4> kAnswerKeys = {"fat", "protein", "saturates", "sugars"};

/// Case-insensitive "key - number" for the four scored nutrients, any order,
/// prose tolerated. When a key occurs more than once the last value wins.
inline NutrientPrediction parse_llm_nutrients(std::string_view text_out) {
  auto hits = nutriest::detail::scan_key_values(text_out, kAnswerKeys, /*strict=*/false);
  NutrientPrediction p;
  std::vector<std::string> missing;
  for (auto key : kAnswerKeys) {
    std::optional<double> value;
    for (const auto& h : hits) {
      if (h.key == key) value = h.value;
    }
    if (!value) {
      missing.emplace_back(key);
      continue;
    }
    p.set(parse_nutrient(key), *value);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ParseError("model output is missing: " + list);
  }
  return p;
}

namespace detail {

/// End (exclusive) of the balanced {...} starting at `open`, or npos.
inline size_t match_object(std::string_view s, size_t open) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (size_t i = open; i < s.size(); ++i) {
    char c = s[i];
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) return i + 1;
  }
  return std::string_view::npos;
}

}  // namespace detail

inline constexpr std::array<std::pair<std::string_view, Nutrient>, 4> kRefineKeys = {{
    {"protein_g", Nutrient::protein},
    {"fat_g", Nutrient::fat},
    {"sugars_g", Nutrient::sugars},
    {"saturates_g", Nutrient::saturates},
}};

/// First top-level JSON object in the text (code fences and prose ignored);
/// requires numeric protein_g, fat_g, sugars_g, saturates_g. Negative values
/// clamp to 0.
inline NutrientPrediction parse_refine_json(std::string_view text_out) {
  std::optional<nlohmann::json> object;
  size_t pos = 0;
  while (!object) {
    size_t open = text_out.find('{', pos);
    if (open == std::string_view::npos) break;
    size_t close = detail::match_object(text_out, open);
    if (close == std::string_view::npos) break;
    try {
      auto j = nlohmann::json::parse(text_out.substr(open, close - open));
      if (j.is_object()) object = std::move(j);
    } catch (const nlohmann::json::exception&) {
    }
    pos = open + 1;
  }
  if (!object) throw ParseError("no JSON object in refinement output");

  NutrientPrediction p;
  for (const auto& [key, nutrient] : kRefineKeys) {
    auto it = object->find(std::string(key));
    if (it == object->end() || !it->is_number()) {
      throw ParseError("refinement JSON lacks numeric '" + std::string(key) + "'");
    }
    p.set(nutrient, std::max(0.0, it->get<double>()));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Transport

struct HttpReply {
  int status = 0;
  std::string body;
  std::string error;  // non-empty when no HTTP response was received
};

using Headers = std::vector<std::pair<std::string, std::string>>;

class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpReply post(const EndpointConfig& ep, const std::string& path, const std::string& body,
                         const Headers& headers) = 0;
};

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path_prefix;
};

inline ParsedUrl parse_base_url(std::string_view url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) throw ArgumentError("base_url needs a scheme: '" + std::string(url) + "'");
  auto path_start = url.find('/', scheme_end + 3);
  ParsedUrl out;
  out.scheme_host_port = std::string(url.substr(0, path_start));
  out.path_prefix = path_start == std::string_view::npos ? "" : std::string(url.substr(path_start));
  while (!out.path_prefix.empty() && out.path_prefix.back() == '/') out.path_prefix.pop_back();
  return out;
}

/// cpp-httplib backed transport; a fresh client per call.
class HttpTransport : public Transport {
 public:
  HttpReply post(const EndpointConfig& ep, const std::string& path, const std::string& body,
                 const Headers& headers) override {
    auto url = parse_base_url(ep.base_url);
    httplib::Client client(url.scheme_host_port);
    auto timeout = std::chrono::duration<double>(ep.timeout_seconds);
    auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout);
    client.set_connection_timeout(micros);
    client.set_read_timeout(micros);
    client.set_write_timeout(micros);
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    auto res = client.Post(url.path_prefix + path, h, body, "application/json");
    HttpReply reply;
    if (!res) {
      reply.error = httplib::to_string(res.error());
      return reply;
    }
    reply.status = res->status;
    reply.body = res->body;
    return reply;
  }
};

/// Counting gate limiting in-flight requests.
class ConcurrencyGate {
 public:
  explicit ConcurrencyGate(int slots) : slots_(slots) {}

  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return slots_ > 0; });
    --slots_;
  }

  void release() {
    {
      std::lock_guard lock(mutex_);
      ++slots_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int slots_;
};

inline bool is_retryable_status(int status) { return status == 429 || (status >= 500 && status <= 599); }

/// Chat-completions client for one endpoint. Safe to share across threads.
class ChatClient {
 public:
  explicit ChatClient(EndpointConfig ep, std::shared_ptr<Transport> transport = std::make_shared<HttpTransport>())
      : ep_(std::move(ep)), transport_(std::move(transport)), gate_(ep_.max_concurrency) {
    ep_.validate();
  }

  const EndpointConfig& endpoint() const { return ep_; }

  /// Content of the first choice. 429, 5xx and connection failures are
  /// retried up to max_retries times with exponential backoff.
  std::string complete(const ChatRequest& req) {
    req.validate();
    Headers headers;
    if (!ep_.api_key_env.empty()) {
      const char* key = std::getenv(ep_.api_key_env.c_str());
      if (key == nullptr || *key == '\0') {
        throw EndpointError(0, "environment variable " + ep_.api_key_env + " is not set");
      }
      headers.emplace_back("Authorization", std::string("Bearer ") + key);
    }
    std::string body = req.to_json(ep_.model_name).dump();

    std::string last_failure;
    for (int attempt = 0; attempt <= ep_.max_retries; ++attempt) {
      if (attempt > 0) {
        double delay = std::min(ep_.max_backoff_seconds, ep_.initial_backoff_seconds * std::pow(2.0, attempt - 1));
        std::this_thread::sleep_for(std::chrono::duration<double>(delay));
      }
      HttpReply reply;
      gate_.acquire();
      try {
        reply = transport_->post(ep_, "/chat/completions", body, headers);
      } catch (...) {
        gate_.release();
        throw;
      }
      gate_.release();

      if (!reply.error.empty()) {
        last_failure = "transport failure: " + reply.error;
        continue;
      }
      if (reply.status >= 200 && reply.status < 300) return extract_content(reply);
      if (is_retryable_status(reply.status)) {
        last_failure = "HTTP " + std::to_string(reply.status) + ": " + excerpt(reply.body);
        continue;
      }
      throw EndpointError(reply.status, "HTTP " + std::to_string(reply.status) + ": " + excerpt(reply.body));
    }
    throw TransportError("giving up after " + std::to_string(ep_.max_retries + 1) + " attempts; last " +
                         last_failure);
  }

 private:
  static std::string excerpt(std::string_view body) {
    constexpr size_t kMax = 300;
    return body.size() <= kMax ? std::string(body) : std::string(body.substr(0, kMax)) + "...";
  }

  static std::string extract_content(const HttpReply& reply) {
    try {
      auto j = nlohmann::json::parse(reply.body);
      const auto& content = j.at("choices").at(0).at("message").at("content");
      if (content.is_string()) return content.get<std::string>();
      // Some servers return content parts: [{"type":"text","text":...}].
      std::string out;
      for (const auto& part : content) out += part.value("text", std::string());
      return out;
    } catch (const nlohmann::json::exception& e) {
      throw EndpointError(reply.status, std::string("malformed chat-completions response: ") + e.what());
    }
  }

  EndpointConfig ep_;
  std::shared_ptr<Transport> transport_;
  ConcurrencyGate gate_;
};

inline std::string complete(const ChatRequest& req, const EndpointConfig& ep) {
  ChatClient client(ep);
  return client.complete(req);
}

inline std::string request_hash(const ChatRequest& req, const std::string& model) {
  return hex64(fnv1a64(req.to_json(model).dump()));
}

// ---------------------------------------------------------------------------
// Refinement and merging

struct RefineResult {
  NutrientPrediction prediction;
  std::optional<std::string> failure;  // set when the input was returned unchanged
};

/// Returns the refined values, or the input prediction when the call or the
/// parse fails.
inline RefineResult refine(std::string_view ingredient_text, const NutrientPrediction& pred, ChatClient& client,
                           GenerationParams params = {}) {
  if (!pred.valid()) throw ArgumentError("prediction to refine must be finite and >= 0");
  try {
    auto out = parse_refine_json(client.complete(render_refine_prompt(ingredient_text, pred, params)));
    if (!out.valid()) return {pred, "refined values are not finite"};
    return {out, std::nullopt};
  } catch (const std::exception& e) {
    return {pred, std::string(e.what())};
  }
}

inline RefineResult refine(std::string_view ingredient_text, const NutrientPrediction& pred,
                           const EndpointConfig& ep) {
  try {
    ChatClient client(ep);
    return refine(ingredient_text, pred, client);
  } catch (const std::exception& e) {
    return {pred, std::string(e.what())};
  }
}

/// `base` with the entries named in `ids` taken from `override_preds`.
inline PredictionMap merge_predictions(const PredictionMap& base, const PredictionMap& override_preds,
                                       const std::set<std::string>& ids) {
  PredictionMap out = base;
  for (const auto& id : ids) {
    auto b = out.find(id);
    if (b == out.end()) throw ArgumentError("merge id '" + id + "' is not in the base predictions");
    auto o = override_preds.find(id);
    if (o == override_preds.end()) throw ArgumentError("merge id '" + id + "' is missing from the override");
    b->second = o->second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transcript cache

/// Append-only json-lines of {id, request_hash, response, timestamp}. Lookup
/// by (id, request hash) replays recorded responses offline.
class TranscriptCache {
 public:
  TranscriptCache() = default;
  explicit TranscriptCache(std::string path) : path_(std::move(path)) {
    std::ifstream probe(path_);
    if (!probe) return;
    std::string contents = text::read_file(path_);
    size_t record = 0;
    for (const auto& line : text::nonblank_lines(contents)) {
      try {
        auto j = nlohmann::json::parse(line);
        entries_[{j.at("id").get<std::string>(), j.at("request_hash").get<std::string>()}] =
            j.at("response").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw ParseError("transcript cache '" + path_ + "' record " + std::to_string(record) + ": " + e.what());
      }
      ++record;
    }
  }

  std::optional<std::string> lookup(const std::string& id, const std::string& hash) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find({id, hash});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void append(const std::string& id, const std::string& hash, const std::string& response) {
    std::lock_guard lock(mutex_);
    entries_[{id, hash}] = response;
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out) throw IoError("cannot append to transcript cache '" + path_ + "'");
    nlohmann::json j = {{"id", id}, {"request_hash", hash}, {"response", response}, {"timestamp", utc_now()}};
    out << j.dump() << '\n';
  }

  size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }

 private:
  static std::string utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::string>, std::string> entries_;
};

/// Completion through the cache: replay when recorded, otherwise call and
/// record.
inline std::string cached_complete(ChatClient& client, const ChatRequest& req, const std::string& id,
                                   TranscriptCache* cache) {
  if (cache == nullptr) return client.complete(req);
  auto hash = request_hash(req, client.endpoint().model_name);
  if (auto hit = cache->lookup(id, hash)) return *hit;
  auto response = client.complete(req);
  cache->append(id, hash, response);
  return response;
}

struct BatchOutcome {
  std::vector<std::optional<NutrientPrediction>> predictions;
  std::vector<std::string> failures;  // one entry per failed sample, "id: reason"
};

/// Direct inference over (id, query text) pairs with at most max_concurrency
/// requests in flight.
inline BatchOutcome direct_predict_batch(std::span<const std::pair<std::string, std::string>> queries,
                                         const FewShotBank& bank, ChatClient& client, TranscriptCache* cache,
                                         GenerationParams params = {}) {
  BatchOutcome out;
  out.predictions.resize(queries.size());
  std::mutex failure_mutex;
  parallel_for(queries.size(), static_cast<size_t>(client.endpoint().max_concurrency), [&](size_t i) {
    const auto& [id, query] = queries[i];
    try {
      auto req = render_direct_prompt(query, bank, params);
      out.predictions[i] = parse_llm_nutrients(cached_complete(client, req, id, cache));
    } catch (const std::exception& e) {
      std::lock_guard lock(failure_mutex);
      out.failures.push_back(id + ": " + e.what());
    }
  });
  return out;
}

}  // namespace nutriest::llm
