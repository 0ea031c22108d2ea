#include "polaris/core/types.hpp"

#include "polaris/core/error.hpp"
#include "polaris/core/text.hpp"

namespace polaris {

PolicyVersion PolicyVersion::make_base(std::string source, std::string created_at) {
  PolicyVersion p;
  p.version = 0;
  p.source = std::move(source);
  p.origin = PolicyOrigin::base;
  p.created_at = std::move(created_at);
  return p;
}

PolicyVersion PolicyVersion::derive(const PolicyVersion& parent, std::string source, PolicyOrigin origin,
                                    std::string created_at) {
  PolicyVersion p;
  p.version = parent.version + 1;
  p.source = std::move(source);
  p.parent = parent.version;
  p.origin = origin;
  p.created_at = std::move(created_at);
  return p;
}

Strategy Strategy::make(std::string_view text, int cycle) {
  Strategy s;
  s.text = text::trim(text);
  s.normalized = text::normalize_directive(s.text);
  s.id = text::hex64(text::fnv1a64(s.normalized));
  s.cycle = cycle;
  return s;
}

std::string to_string(PolicyOrigin o) {
  switch (o) {
    case PolicyOrigin::base: return "base";
    case PolicyOrigin::repaired: return "repaired";
    case PolicyOrigin::reverted: return "reverted";
  }
  return "base";
}

std::string to_string(PatchMode m) { return m == PatchMode::anchored ? "anchored" : "llm_rewrite"; }

std::string to_string(Metric m) {
  switch (m) {
    case Metric::accuracy_ci: return "accuracy_ci";
    case Metric::macro_f1: return "macro_f1";
    case Metric::preference_accuracy: return "preference_accuracy";
  }
  return "accuracy_ci";
}

PatchMode patch_mode_from_string(std::string_view s) {
  if (s == "anchored") return PatchMode::anchored;
  if (s == "llm_rewrite") return PatchMode::llm_rewrite;
  throw ConfigError("unknown integration mode '" + std::string(s) + "' (expected anchored|llm_rewrite)");
}

Metric metric_from_string(std::string_view s) {
  if (s == "accuracy_ci") return Metric::accuracy_ci;
  if (s == "macro_f1") return Metric::macro_f1;
  if (s == "preference_accuracy") return Metric::preference_accuracy;
  throw ConfigError("unknown metric '" + std::string(s) +
                    "' (expected accuracy_ci|macro_f1|preference_accuracy)");
}

void to_json(Json& j, const PolicyVersion& p) {
  j = Json{{"version", p.version},
           {"parent", p.parent ? Json(*p.parent) : Json(nullptr)},
           {"origin", to_string(p.origin)},
           {"created_at", p.created_at}};
}

void to_json(Json& j, const TaskInstance& t) {
  j = Json{{"id", t.id}, {"input", t.input}, {"target", t.target}};
  if (!t.metadata.empty()) j["metadata"] = t.metadata;
}

void to_json(Json& j, const FailureRecord& f) {
  j = Json{{"task_id", f.task.id},
           {"input", f.task.input},
           {"reasoning", f.reasoning},
           {"predicted", f.predicted},
           {"reference", f.reference}};
}

void to_json(Json& j, const Reflection& r) {
  j = Json{{"task_id", r.task_id},
           {"diagnosis", r.diagnosis},
           {"revision", r.revision},
           {"prevention", r.prevention},
           {"complete", r.complete()},
           {"raw", r.raw}};
}

void to_json(Json& j, const Strategy& s) {
  j = Json{{"id", s.id}, {"text", s.text}, {"cycle", s.cycle}, {"normalized", s.normalized}};
}

void to_json(Json& j, const Patch& p) {
  j = Json{{"strategy_id", p.strategy_id}, {"mode", to_string(p.mode)}, {"body", p.body}};
}

}  // namespace polaris
