#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "polaris/llm/backend.hpp"

namespace polaris::llm {

struct ScriptEntry {
  std::string tag;
  std::vector<std::string> texts;
};

/// Deterministic oracle: answers requests strictly in script order. Each
/// request must carry the tag of the next entry and ask for exactly as many
/// responses as that entry holds; anything else is a ConfigError, as is
/// running past the end of the script.
class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(std::vector<ScriptEntry> script);
  ScriptedBackend(ScriptedBackend&& other) noexcept : script_(std::move(other.script_)), cursor_(other.cursor_) {}

  /// NDJSON, one {"tag": ..., "texts": [...]} per line. Blank lines are skipped.
  static ScriptedBackend load(const std::filesystem::path& path);
  static std::vector<ScriptEntry> parse(std::string_view ndjson, const std::string& origin = "script");

  ChatResponse complete(const ChatRequest& request) override;
  bool deterministic() const override { return true; }

  std::size_t cursor() const;
  std::size_t size() const { return script_.size(); }

 private:
  std::vector<ScriptEntry> script_;
  mutable std::mutex mu_;
  std::size_t cursor_ = 0;
};

}  // namespace polaris::llm
