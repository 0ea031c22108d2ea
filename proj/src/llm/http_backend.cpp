#include "polaris/llm/http_backend.hpp"

#include <cstdlib>
#include <regex>
#include <thread>

#include <httplib.h>

namespace polaris::llm {

HttpBackend::HttpBackend(HttpOptions options) : options_(std::move(options)) {
  static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(options_.endpoint, m, url_re)) {
    throw ConfigError("backend endpoint must look like http(s)://host[:port][/path], got '" + options_.endpoint +
                      "'");
  }
  scheme_host_port_ = m[1].str();
  base_path_ = m[2].matched ? m[2].str() : "";
  while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme_host_port_.rfind("https", 0) == 0) {
    throw ConfigError("https endpoints need a build with TLS support");
  }
#endif
  if (options_.max_concurrency < 1) options_.max_concurrency = 1;
  sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string HttpBackend::api_key_from_env() {
  const char* v = std::getenv("POLARIS_API_KEY");
  return v ? v : "";
}

ChatResponse HttpBackend::post_once(const ChatRequest& request, int n) {
  Json body{{"model", options_.model.empty() ? request.model : options_.model},
            {"temperature", request.temperature},
            {"n", n},
            {"messages", Json::array()}};
  for (const auto& m : request.messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});

  httplib::Client cli(scheme_host_port_);
  const auto secs = std::chrono::duration<double>(options_.timeout_seconds);
  const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(secs);
  cli.set_connection_timeout(usec);
  cli.set_read_timeout(usec);
  cli.set_write_timeout(usec);
  httplib::Headers headers;
  if (!options_.api_key.empty()) headers.emplace("Authorization", "Bearer " + options_.api_key);

  const auto started = std::chrono::steady_clock::now();
  auto res = cli.Post(base_path_ + "/chat/completions", headers, body.dump(), "application/json");
  const double latency = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (!res) {
    throw TransportError("request '" + request.tag + "' failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransportError("request '" + request.tag + "': HTTP " + std::to_string(res->status));
  }
  if (res->status < 200 || res->status >= 300) {
    throw BackendError("request '" + request.tag + "': HTTP " + std::to_string(res->status) + ": " +
                       res->body.substr(0, 500));
  }
  Json j;
  try {
    j = Json::parse(res->body);
  } catch (const Json::parse_error&) {
    throw BackendError("request '" + request.tag + "': response body is not JSON");
  }
  ChatResponse out;
  out.latency_seconds = latency;
  if (!j.contains("choices") || !j["choices"].is_array()) {
    throw BackendError("request '" + request.tag + "': response has no 'choices' array");
  }
  for (const auto& c : j["choices"]) {
    const Json* content = nullptr;
    if (c.contains("message") && c["message"].contains("content")) content = &c["message"]["content"];
    if (!content || !content->is_string()) {
      throw BackendError("request '" + request.tag + "': choice without message.content");
    }
    out.texts.push_back(content->get<std::string>());
  }
  if (j.contains("usage") && j["usage"].is_object()) {
    Usage u;
    u.prompt_tokens = j["usage"].value("prompt_tokens", 0L);
    u.completion_tokens = j["usage"].value("completion_tokens", 0L);
    out.usage = u;
  }
  return out;
}

ChatResponse HttpBackend::complete(const ChatRequest& request) {
  ChatResponse total;
  total.latency_seconds = 0.0;
  while (static_cast<int>(total.texts.size()) < request.n_responses) {
    const int want = request.n_responses - static_cast<int>(total.texts.size());
    ChatResponse part;
    auto delay = options_.initial_backoff;
    for (int attempt = 0;; ++attempt) {
      try {
        part = post_once(request, want);
        break;
      } catch (const TransportError&) {
        if (attempt >= options_.transport_retries) throw;
        sleep_(delay);
        delay *= 2;
      }
    }
    if (part.texts.empty()) throw BackendError("request '" + request.tag + "': server returned no choices");
    for (auto& t : part.texts) {
      if (static_cast<int>(total.texts.size()) < request.n_responses) total.texts.push_back(std::move(t));
    }
    total.latency_seconds += part.latency_seconds;
    if (part.usage) {
      if (!total.usage) total.usage = Usage{};
      total.usage->prompt_tokens += part.usage->prompt_tokens;
      total.usage->completion_tokens += part.usage->completion_tokens;
    }
  }
  return total;
}

}  // namespace polaris::llm
