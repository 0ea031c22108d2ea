#include "polaris/cli/backend_factory.hpp"

#include "polaris/llm/http_backend.hpp"
#include "polaris/llm/scripted.hpp"

namespace polaris::cli {

std::unique_ptr<llm::Backend> make_backend(const RunConfig& config) {
  if (config.backend.kind == BackendKind::scripted) {
    return std::make_unique<llm::ScriptedBackend>(llm::ScriptedBackend::load(config.backend.script));
  }
  llm::HttpOptions o;
  o.endpoint = config.backend.endpoint;
  o.model = config.backend.model;
  o.api_key = llm::HttpBackend::api_key_from_env();
  o.timeout_seconds = config.backend.timeout_seconds;
  o.max_concurrency = config.parallelism;
  return std::make_unique<llm::HttpBackend>(o);
}

std::unique_ptr<Clock> make_clock(const RunConfig& config) {
  if (config.effective_clock() == ClockMode::logical) return std::make_unique<LogicalClock>();
  return std::make_unique<SystemClock>();
}

}  // namespace polaris::cli
