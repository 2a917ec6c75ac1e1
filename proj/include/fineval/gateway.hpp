#pragma once

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

namespace fineval {

struct ChatRequest {
  std::string system;
  std::string user;
  double temperature = 0.0;
  int max_tokens = 2048;
  std::string model;
};

enum class BackendKind { remote, mock };

struct BackendConfig {
  BackendKind kind = BackendKind::mock;
  std::string endpoint;  // remote only, e.g. http://host:8080/v1/chat/completions
  std::string model = "mock-model";
  int max_in_flight = 4;
  int max_retries = 2;
  std::filesystem::path cache_dir;  // empty disables the response cache
  std::string api_key_env = "FINEVAL_API_KEY";
  std::filesystem::path script_path;  // mock only: scripted responses
  int retry_base_ms = 200;            // exponential backoff base

  void validate() const;  // throws on max_in_flight < 1 etc.
};

// Hash of (system, user, model) — how mock scripts key their entries, so
// scripted tests are insensitive to scheduling and sampling parameters.
std::string request_fingerprint(const ChatRequest& request);

// Cache key covers everything that can change a deterministic response:
// (model, system, user, temperature, max_tokens).
std::string cache_key(const ChatRequest& request);

// Canned responses keyed by request fingerprint. Looking up an unscripted
// fingerprint is an error, never a silent default.
class MockScript {
public:
  void add(const ChatRequest& request, std::string response);
  void add_fingerprint(std::string fingerprint, std::string response);
  std::optional<std::string> lookup(const std::string& fingerprint) const;
  std::size_t size() const { return entries_.size(); }

  // Script file: one record per line, either {"fingerprint", "response"} or
  // {"system", "user", "model", "response"} (fingerprint computed on load).
  static MockScript load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

private:
  std::map<std::string, std::string> entries_;
};

// Uniform access to a chat-completion model. complete() is callable from any
// number of threads; at most max_in_flight requests are outstanding against
// the underlying backend at any instant. Cache hits bypass the backend
// entirely.
class Backend {
public:
  explicit Backend(BackendConfig config);
  Backend(BackendConfig config, MockScript script);

  std::string complete(const ChatRequest& request);

  // Test hook: called with the post-transition in-flight count whenever a
  // request enters or leaves the backend.
  void set_inflight_hook(std::function<void(int)> hook);

  std::uint64_t backend_calls() const { return backend_calls_.load(); }
  std::uint64_t cache_hits() const { return cache_hits_.load(); }
  const BackendConfig& config() const { return config_; }

private:
  std::string dispatch(const ChatRequest& request);
  std::string dispatch_remote(const ChatRequest& request);
  std::optional<std::string> cache_read(const std::string& key) const;
  void cache_write(const std::string& key, const std::string& value) const;

  BackendConfig config_;
  MockScript script_;
  std::function<void(int)> inflight_hook_;
  std::atomic<std::uint64_t> backend_calls_{0};
  std::atomic<std::uint64_t> cache_hits_{0};

  std::mutex slots_mutex_;
  std::condition_variable slots_cv_;
  int slots_free_ = 0;
  int inflight_ = 0;
};

// Content between the first "<tag>" and its matching "</tag>", whitespace
// trimmed. First occurrence wins when the tag repeats.
std::string extract_tagged_section(const std::string& text, const std::string& tag);

// Strips code fences and prose around the first complete JSON array-or-object
// literal and parses it. Throws NoPayloadFound / PayloadMalformed.
nlohmann::json parse_structured_payload(const std::string& text);

}  // namespace fineval
