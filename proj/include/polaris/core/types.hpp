#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace polaris {

using Json = nlohmann::json;

enum class PolicyOrigin { base, repaired, reverted };

/// Immutable snapshot of a policy program plus its lineage.
struct PolicyVersion {
  int version = 0;
  std::string source;
  std::optional<int> parent;
  PolicyOrigin origin = PolicyOrigin::base;
  std::string created_at;

  static PolicyVersion make_base(std::string source, std::string created_at);
  /// Child of `parent` with version parent.version + 1.
  static PolicyVersion derive(const PolicyVersion& parent, std::string source, PolicyOrigin origin,
                              std::string created_at);
};

struct TaskInstance {
  std::string id;
  std::string input;
  std::string target;
  std::map<std::string, std::string> metadata;
};

/// One task the active policy got wrong.
struct FailureRecord {
  TaskInstance task;
  std::string reasoning;
  std::string predicted;
  std::string reference;
};

/// Structured failure analysis: diagnosis, revision plan, prevention rule.
struct Reflection {
  std::string task_id;
  std::string diagnosis;
  std::string revision;
  std::string prevention;
  std::string raw;

  bool complete() const { return !diagnosis.empty() && !revision.empty() && !prevention.empty(); }
};

/// A short reusable repair directive. `normalized` drives novelty checks.
struct Strategy {
  std::string id;
  std::string text;
  int cycle = 0;
  std::string normalized;

  static Strategy make(std::string_view text, int cycle);
};

enum class PatchMode { anchored, llm_rewrite };

struct Patch {
  std::string strategy_id;
  std::string body;
  PatchMode mode = PatchMode::anchored;
};

enum class Metric { accuracy_ci, macro_f1, preference_accuracy };

std::string to_string(PolicyOrigin o);
std::string to_string(PatchMode m);
std::string to_string(Metric m);
PatchMode patch_mode_from_string(std::string_view s);
Metric metric_from_string(std::string_view s);

void to_json(Json& j, const PolicyVersion& p);
void to_json(Json& j, const TaskInstance& t);
void to_json(Json& j, const FailureRecord& f);
void to_json(Json& j, const Reflection& r);
void to_json(Json& j, const Strategy& s);
void to_json(Json& j, const Patch& p);

}  // namespace polaris
