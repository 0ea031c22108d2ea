#pragma once

#include <chrono>
#include <functional>
#include <string>

#include "polaris/llm/backend.hpp"

namespace polaris::llm {

struct HttpOptions {
  /// Base URL, e.g. "http://localhost:8000/v1"; "/chat/completions" is appended.
  std::string endpoint;
  std::string model;
  /// Sent as "Authorization: Bearer <key>" when non-empty.
  std::string api_key;
  double timeout_seconds = 300.0;
  int max_concurrency = 1;
  /// Retries after the first attempt, for transport failures only.
  int transport_retries = 3;
  std::chrono::milliseconds initial_backoff{1000};
};

/// Chat-completions client. Transport failures (connection errors, timeouts,
/// 429, 5xx) are retried with exponential backoff; other HTTP errors throw
/// BackendError straight away. Servers that return fewer choices than `n`
/// are asked again for the remainder.
class HttpBackend final : public Backend {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit HttpBackend(HttpOptions options);
  /// Replaces the real sleep between retries (tests).
  void set_sleeper(Sleeper s) { sleep_ = std::move(s); }

  ChatResponse complete(const ChatRequest& request) override;
  int max_concurrency() const override { return options_.max_concurrency; }

  /// Reads POLARIS_API_KEY; empty when unset.
  static std::string api_key_from_env();

 private:
  ChatResponse post_once(const ChatRequest& request, int n);

  HttpOptions options_;
  std::string scheme_host_port_;
  std::string base_path_;
  Sleeper sleep_;
};

}  // namespace polaris::llm
