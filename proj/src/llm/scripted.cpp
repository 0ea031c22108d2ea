#include "polaris/llm/scripted.hpp"

#include "polaris/core/artifacts.hpp"
#include "polaris/core/text.hpp"

namespace polaris::llm {

ScriptedBackend::ScriptedBackend(std::vector<ScriptEntry> script) : script_(std::move(script)) {}

std::vector<ScriptEntry> ScriptedBackend::parse(std::string_view ndjson, const std::string& origin) {
  std::vector<ScriptEntry> out;
  int lineno = 0;
  for (const auto& line : text::split_lines(ndjson)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ConfigError(where + ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("tag") || !j["tag"].is_string() || !j.contains("texts") ||
        !j["texts"].is_array()) {
      throw ConfigError(where + ": script entries need a string 'tag' and an array 'texts'");
    }
    ScriptEntry e{j["tag"].get<std::string>(), {}};
    for (const auto& t : j["texts"]) {
      if (!t.is_string()) throw ConfigError(where + ": 'texts' must hold strings");
      e.texts.push_back(t.get<std::string>());
    }
    if (e.texts.empty()) throw ConfigError(where + ": 'texts' is empty");
    out.push_back(std::move(e));
  }
  return out;
}

ScriptedBackend ScriptedBackend::load(const std::filesystem::path& path) {
  std::string content;
  try {
    content = read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("cannot read script: ") + e.what());
  }
  return ScriptedBackend(parse(content, path.string()));
}

ChatResponse ScriptedBackend::complete(const ChatRequest& request) {
  std::lock_guard lock(mu_);
  if (cursor_ >= script_.size()) {
    throw ConfigError("script exhausted: no entry left for request tag '" + request.tag + "' (" +
                      std::to_string(script_.size()) + " entries consumed)");
  }
  const ScriptEntry& e = script_[cursor_];
  if (e.tag != request.tag) {
    throw ConfigError("script tag mismatch at entry " + std::to_string(cursor_ + 1) + ": script has '" + e.tag +
                      "', request is '" + request.tag + "'");
  }
  if (e.texts.size() != static_cast<std::size_t>(request.n_responses)) {
    throw ConfigError("script entry " + std::to_string(cursor_ + 1) + " ('" + e.tag + "') holds " +
                      std::to_string(e.texts.size()) + " text(s) but the request asks for " +
                      std::to_string(request.n_responses));
  }
  ++cursor_;
  return ChatResponse{e.texts, std::nullopt, 0.0};
}

std::size_t ScriptedBackend::cursor() const {
  std::lock_guard lock(mu_);
  return cursor_;
}

}  // namespace polaris::llm
