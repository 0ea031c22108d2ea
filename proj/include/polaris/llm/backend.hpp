#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polaris/core/error.hpp"
#include "polaris/core/types.hpp"

namespace polaris::llm {

struct ChatMessage {
  std::string role;  // system | user | assistant
  std::string content;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int n_responses = 1;
  std::string model;
  /// Free label; the scripted backend matches on it, the ledger records it.
  std::string tag;

  /// Throws ParameterError.
  void validate() const;
};

struct Usage {
  long prompt_tokens = 0;
  long completion_tokens = 0;
};

struct ChatResponse {
  std::vector<std::string> texts;
  std::optional<Usage> usage;
  double latency_seconds = 0.0;
};

/// Retryable transport-level failure (connection refused, timeout, 5xx, 429).
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Non-retryable backend failure (4xx, malformed body). Fatal for the run.
class BackendError : public Error {
 public:
  using Error::Error;
};

class Backend {
 public:
  virtual ~Backend() = default;
  /// Returns exactly request.n_responses texts or throws.
  virtual ChatResponse complete(const ChatRequest& request) = 0;
  /// How many requests may be in flight at once.
  virtual int max_concurrency() const { return 1; }
  /// True for the scripted oracle; such runs are replayable.
  virtual bool deterministic() const { return false; }
};

/// Validates the request, calls the backend and checks the response length.
ChatResponse chat(Backend& backend, const ChatRequest& request);

/// Shorthand for a system + user request.
ChatRequest make_request(std::string system, std::string user, std::string tag, double temperature = 0.0,
                         int n = 1);

Json to_json(const ChatRequest& r);
/// Latency is left out so that scripted artifacts stay byte-stable.
Json to_json(const ChatResponse& r);

}  // namespace polaris::llm
