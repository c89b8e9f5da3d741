#pragma once

// Endpoint stand-ins for the LLM tier: a scripted in-memory transport and a
// loopback HTTP server speaking the chat-completions shape.

#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "nutriest/llm.hpp"

namespace stubs {

inline std::string completion_body(const std::string& content) {
  nlohmann::json j = {{"id", "stub"},
                      {"object", "chat.completion"},
                      {"choices", {{{"index", 0}, {"message", {{"role", "assistant"}, {"content", content}}}}}}};
  return j.dump();
}

/// Replies from a fixed script; the last entry repeats once the script runs out.
class ScriptedTransport : public nutriest::llm::Transport {
 public:
  explicit ScriptedTransport(std::vector<nutriest::llm::HttpReply> script) : script_(std::move(script)) {}

  nutriest::llm::HttpReply post(const nutriest::llm::EndpointConfig&, const std::string& path,
                                const std::string& body, const nutriest::llm::Headers& headers) override {
    std::lock_guard lock(mutex_);
    paths.push_back(path);
    bodies.push_back(body);
    last_headers = headers;
    size_t i = std::min(calls++, script_.size() - 1);
    return script_[i];
  }

  size_t calls = 0;
  std::vector<std::string> paths;
  std::vector<std::string> bodies;
  nutriest::llm::Headers last_headers;

 private:
  std::mutex mutex_;
  std::vector<nutriest::llm::HttpReply> script_;
};

inline nutriest::llm::HttpReply ok(const std::string& content) { return {200, completion_body(content), ""}; }
inline nutriest::llm::HttpReply status(int code, std::string body = "{}") { return {code, std::move(body), ""}; }
inline nutriest::llm::HttpReply unreachable() { return {0, "", "connection refused"}; }

/// Answers each request through `handler` (given the parsed request json,
/// returns status and body). Runs on a loopback port until destroyed.
class LoopbackServer {
 public:
  using Handler = std::function<std::pair<int, std::string>(const nlohmann::json&, const httplib::Request&)>;

  explicit LoopbackServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests;
      auto [code, body] = handler_(nlohmann::json::parse(req.body), req);
      res.status = code;
      res.set_content(body, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~LoopbackServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

  std::atomic<int> requests{0};

 private:
  Handler handler_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

inline nutriest::llm::EndpointConfig fast_endpoint(const std::string& base_url, int max_retries = 3) {
  nutriest::llm::EndpointConfig ep;
  ep.base_url = base_url;
  ep.model_name = "stub-model";
  ep.max_retries = max_retries;
  ep.initial_backoff_seconds = 0.001;
  ep.max_backoff_seconds = 0.004;
  ep.timeout_seconds = 5.0;
  return ep;
}

}  // namespace stubs
