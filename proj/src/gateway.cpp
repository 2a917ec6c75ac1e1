#include "fineval/gateway.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "fineval/errors.hpp"
#include "fineval/hash.hpp"
#include "fineval/jsonl.hpp"
#include "fineval/log.hpp"
#include "fineval/text.hpp"

namespace fineval {

namespace {

constexpr char kSep = '\x1f';

std::string format_temperature(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", t);
  return buf;
}

void validate_request(const ChatRequest& request) {
  if (request.user.empty()) throw Error("chat request has empty user content");
  if (request.temperature < 0.0) throw Error("chat request temperature must be >= 0");
  if (request.max_tokens <= 0) throw Error("chat request max_tokens must be positive");
}

// Splits "http(s)://host[:port]/path" into client base and request path.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos)
    throw Error("endpoint \"" + endpoint + "\" has no scheme");
  auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {endpoint, "/v1/chat/completions"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

}  // namespace

void BackendConfig::validate() const {
  if (max_in_flight < 1) throw Error("max_in_flight must be >= 1");
  if (max_retries < 0) throw Error("max_retries must be >= 0");
  if (kind == BackendKind::remote && endpoint.empty())
    throw Error("remote backend requires an endpoint");
}

std::string request_fingerprint(const ChatRequest& request) {
  std::string buf;
  buf.reserve(request.system.size() + request.user.size() + request.model.size() + 2);
  buf += request.system;
  buf += kSep;
  buf += request.user;
  buf += kSep;
  buf += request.model;
  return sha256_hex(buf);
}

std::string cache_key(const ChatRequest& request) {
  std::string buf;
  buf += request.model;
  buf += kSep;
  buf += request.system;
  buf += kSep;
  buf += request.user;
  buf += kSep;
  buf += format_temperature(request.temperature);
  buf += kSep;
  buf += std::to_string(request.max_tokens);
  return sha256_hex(buf);
}

void MockScript::add(const ChatRequest& request, std::string response) {
  entries_[request_fingerprint(request)] = std::move(response);
}

void MockScript::add_fingerprint(std::string fingerprint, std::string response) {
  entries_[std::move(fingerprint)] = std::move(response);
}

std::optional<std::string> MockScript::lookup(const std::string& fingerprint) const {
  auto it = entries_.find(fingerprint);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

MockScript MockScript::load(const std::filesystem::path& path) {
  MockScript script;
  read_jsonl(path, [&](std::size_t line_no, const Json& record) {
    std::string response = require_string(record, "response", line_no);
    if (record.contains("fingerprint")) {
      script.add_fingerprint(require_string(record, "fingerprint", line_no), std::move(response));
    } else {
      ChatRequest req;
      req.system = record.value("system", "");
      req.user = require_string(record, "user", line_no);
      req.model = require_string(record, "model", line_no);
      script.add(req, std::move(response));
    }
  });
  return script;
}

void MockScript::save(const std::filesystem::path& path) const {
  JsonlWriter out(path);
  for (const auto& [fingerprint, response] : entries_) {
    out.write({{"fingerprint", fingerprint}, {"response", response}});
  }
  out.close();
}

Backend::Backend(BackendConfig config) : config_(std::move(config)) {
  config_.validate();
  if (config_.kind == BackendKind::mock && !config_.script_path.empty()) {
    script_ = MockScript::load(config_.script_path);
  }
  slots_free_ = config_.max_in_flight;
}

Backend::Backend(BackendConfig config, MockScript script) : Backend(std::move(config)) {
  script_ = std::move(script);
}

void Backend::set_inflight_hook(std::function<void(int)> hook) {
  inflight_hook_ = std::move(hook);
}

std::string Backend::complete(const ChatRequest& request) {
  validate_request(request);

  std::string key;
  if (!config_.cache_dir.empty()) {
    key = cache_key(request);
    if (auto cached = cache_read(key)) {
      cache_hits_.fetch_add(1);
      return *cached;
    }
  }

  {
    std::unique_lock lock(slots_mutex_);
    slots_cv_.wait(lock, [&] { return slots_free_ > 0; });
    --slots_free_;
    ++inflight_;
    int now = inflight_;
    lock.unlock();
    if (inflight_hook_) inflight_hook_(now);
  }

  std::string response;
  std::exception_ptr failure;
  try {
    response = dispatch(request);
  } catch (...) {
    failure = std::current_exception();
  }

  {
    std::unique_lock lock(slots_mutex_);
    ++slots_free_;
    --inflight_;
    int now = inflight_;
    lock.unlock();
    if (inflight_hook_) inflight_hook_(now);
    slots_cv_.notify_one();
  }
  if (failure) std::rethrow_exception(failure);

  if (trim(response).empty()) throw ResponseEmpty("backend returned an empty response");
  if (!key.empty()) cache_write(key, response);
  return response;
}

std::string Backend::dispatch(const ChatRequest& request) {
  backend_calls_.fetch_add(1);
  if (config_.kind == BackendKind::mock) {
    std::string fp = request_fingerprint(request);
    auto scripted = script_.lookup(fp);
    if (!scripted) {
      throw UnscriptedRequest("no scripted response for fingerprint " + fp + " (user: \"" +
                              request.user.substr(0, 80) + "...\")");
    }
    return *scripted;
  }
  return dispatch_remote(request);
}

std::string Backend::dispatch_remote(const ChatRequest& request) {
  auto [base, path] = split_endpoint(config_.endpoint);

  Json body{{"model", request.model},
            {"temperature", request.temperature},
            {"max_tokens", request.max_tokens}};
  Json messages = Json::array();
  if (!request.system.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user}});
  body["messages"] = std::move(messages);
  const std::string payload = body.dump();

  const char* api_key = nullptr;
  if (!config_.api_key_env.empty()) api_key = std::getenv(config_.api_key_env.c_str());

  std::mt19937_64 rng{std::random_device{}()};
  int last_status = 0;
  std::string last_body;
  const int attempts = config_.max_retries + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      // Exponential backoff with full jitter.
      double cap = static_cast<double>(config_.retry_base_ms) * std::pow(2.0, attempt - 1);
      std::uniform_real_distribution<double> jitter(0.0, cap);
      std::this_thread::sleep_for(
          std::chrono::milliseconds(static_cast<long>(jitter(rng)) + 1));
    }

    httplib::Client client(base);
    client.set_read_timeout(120, 0);
    client.set_connection_timeout(10, 0);
    httplib::Headers headers;
    if (api_key && *api_key) headers.emplace("Authorization", std::string("Bearer ") + api_key);

    auto result = client.Post(path, headers, payload, "application/json");
    if (!result) {
      last_status = 0;
      last_body = httplib::to_string(result.error());
      log::warn("gateway", "transport error (" + last_body + "), attempt " +
                                std::to_string(attempt + 1) + "/" + std::to_string(attempts));
      continue;
    }
    last_status = result->status;
    last_body = result->body;
    if (result->status == 429 || result->status >= 500) {
      log::warn("gateway", "status " + std::to_string(result->status) + ", attempt " +
                                std::to_string(attempt + 1) + "/" + std::to_string(attempts));
      continue;
    }
    if (result->status != 200) throw TransportError(result->status, result->body);

    Json parsed = Json::parse(result->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty())
      throw TransportError(result->status, "response has no choices: " + result->body);
    const Json& choice = parsed["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content"))
      return choice["message"]["content"].get<std::string>();
    if (choice.contains("text")) return choice["text"].get<std::string>();
    throw TransportError(result->status, "first choice carries no text: " + result->body);
  }

  if (last_status == 429)
    throw RateLimited("rate limited after " + std::to_string(attempts) + " attempts");
  throw TransportError(last_status, last_body);
}

std::optional<std::string> Backend::cache_read(const std::string& key) const {
  std::ifstream in(config_.cache_dir / key, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void Backend::cache_write(const std::string& key, const std::string& value) const {
  std::error_code ec;
  std::filesystem::create_directories(config_.cache_dir, ec);
  // Write-then-rename keeps concurrent readers off partial files;
  // last-writer-wins is fine because values are deterministic per key.
  std::ostringstream tmp_name;
  tmp_name << key << ".tmp." << std::this_thread::get_id();
  auto tmp_path = config_.cache_dir / tmp_name.str();
  {
    std::ofstream out(tmp_path, std::ios::binary);
    if (!out) throw IoFailure("cannot write cache file " + tmp_path.string());
    out << value;
    if (!out) throw IoFailure("write error on " + tmp_path.string());
  }
  std::filesystem::rename(tmp_path, config_.cache_dir / key, ec);
  if (ec) throw IoFailure("cannot finalize cache file: " + ec.message());
}

std::string extract_tagged_section(const std::string& text, const std::string& tag) {
  const std::string open = "<" + tag + ">";
  const std::string close = "</" + tag + ">";
  auto start = text.find(open);
  if (start == std::string::npos) throw TagMissing(tag);
  start += open.size();
  auto end = text.find(close, start);
  if (end == std::string::npos) throw TagUnclosed(tag);
  return trim(std::string_view(text).substr(start, end - start));
}

nlohmann::json parse_structured_payload(const std::string& text) {
  std::optional<std::size_t> first_opener;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (c != '[' && c != '{') {
      ++pos;
      continue;
    }
    if (!first_opener) first_opener = pos;

    // String-aware balanced scan for the literal that starts here.
    std::vector<char> stack;
    bool in_string = false;
    bool escaped = false;
    std::size_t i = pos;
    std::optional<std::size_t> end;
    for (; i < text.size(); ++i) {
      char ch = text[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (ch == '\\') {
          escaped = true;
        } else if (ch == '"') {
          in_string = false;
        }
        continue;
      }
      if (ch == '"') {
        in_string = true;
      } else if (ch == '[' || ch == '{') {
        stack.push_back(ch);
      } else if (ch == ']' || ch == '}') {
        if (stack.empty() || (ch == ']' && stack.back() != '[') ||
            (ch == '}' && stack.back() != '{')) {
          break;  // mismatched close, not a literal
        }
        stack.pop_back();
        if (stack.empty()) {
          end = i + 1;
          break;
        }
      }
    }
    if (end) {
      Json parsed = Json::parse(text.substr(pos, *end - pos), nullptr, false);
      if (!parsed.is_discarded()) return parsed;
    }
    ++pos;
  }
  if (first_opener) throw PayloadMalformed(*first_opener, "no parsable literal");
  throw NoPayloadFound("text contains no array or object literal");
}

}  // namespace fineval
