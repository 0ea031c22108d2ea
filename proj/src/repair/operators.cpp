#include "polaris/repair/operators.hpp"

#include <cctype>
#include <regex>
#include <set>

#include "polaris/core/text.hpp"
#include "polaris/policylang/lexer.hpp"
#include "polaris/repair/prompts.hpp"

namespace polaris::repair {

llm::ChatResponse RepairContext::ask(llm::ChatRequest request) {
  request.model = model;
  return llm::chat(backend, request);
}

namespace {

std::string strip_stars(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != '*') out.push_back(c);
  }
  return out;
}

/// Header text with markdown decoration ("### ", "**", "- ") removed.
std::string header_text(std::string_view line) {
  std::string t = strip_stars(line);
  std::size_t i = 0;
  while (i < t.size() && (t[i] == '#' || t[i] == '-' || t[i] == ' ' || t[i] == '\t')) ++i;
  return text::trim(std::string_view(t).substr(i));
}

llm::ChatRequest follow_up(const std::string& prompt, const std::string& reply, const std::string& reask,
                           const std::string& tag) {
  llm::ChatRequest r;
  r.messages = {{"user", prompt}, {"assistant", reply}, {"user", reask}};
  r.tag = tag;
  return r;
}

}  // namespace

ReflectionSections parse_reflection(std::string_view response) {
  static const std::regex numbered(R"(^([1-3])\s*[.):]\s*(.*)$)");
  static const std::regex labelled(
      R"(^(diagnosis|explanation|failure|revision|suggestion|suggestions|step-by-step suggestions|revision plan|prevention|prevention rule|advice)\b[^:]{0,40}:\s*(.*)$)",
      std::regex::icase);
  std::string parts[3];
  int current = 0;  // 0 = before the first section
  int highest = 0;
  for (const auto& raw : text::split_lines(response)) {
    const bool indented = !raw.empty() && (raw[0] == ' ' || raw[0] == '\t');
    const std::string h = header_text(raw);
    std::smatch m;
    int section = 0;
    std::string rest;
    if (!indented && std::regex_match(h, m, numbered) && std::stoi(m[1].str()) == highest + 1) {
      section = std::stoi(m[1].str());
      rest = m[2].str();
    } else if (std::regex_match(h, m, labelled)) {
      const std::string label = text::to_lower(m[1].str());
      if (label == "diagnosis" || label == "explanation" || label == "failure") section = 1;
      else if (label.rfind("prevention", 0) == 0 || label == "advice") section = 3;
      else section = 2;
      rest = m[2].str();
    }
    if (section) {
      current = section;
      highest = std::max(highest, section);
      if (!parts[current - 1].empty()) parts[current - 1] += "\n";
      parts[current - 1] += rest;
    } else if (current) {
      parts[current - 1] += "\n" + raw;
    }
  }
  return {text::trim(parts[0]), text::trim(parts[1]), text::trim(parts[2])};
}

Reflection analyze_failure(const PolicyVersion& policy, const AgentState& /*state*/, const FailureRecord& failure,
                           RepairContext& ctx) {
  const std::string prompt = analyze_failures_prompt(failure, policy.source);
  const std::string tag = "analyze/" + failure.task.id;
  const std::string reply = ctx.ask(llm::make_request("", prompt, tag)).texts.front();

  Reflection r;
  r.task_id = failure.task.id;
  r.raw = reply;
  auto s = parse_reflection(reply);
  bool reasked = false;
  if (s.diagnosis.empty() || s.revision.empty() || s.prevention.empty()) {
    reasked = true;
    const std::string again =
        ctx.ask(follow_up(prompt, reply, kReflectionReask, "analyze_reask/" + failure.task.id)).texts.front();
    r.raw += "\n\n" + again;
    const auto s2 = parse_reflection(again);
    if (!s2.diagnosis.empty()) s.diagnosis = s2.diagnosis;
    if (!s2.revision.empty()) s.revision = s2.revision;
    if (!s2.prevention.empty()) s.prevention = s2.prevention;
  }
  r.diagnosis = s.diagnosis;
  r.revision = s.revision;
  r.prevention = s.prevention;

  Json payload = r;
  Json missing = Json::array();
  if (r.diagnosis.empty()) missing.push_back("diagnosis");
  if (r.revision.empty()) missing.push_back("revision");
  if (r.prevention.empty()) missing.push_back("prevention");
  payload["missing"] = missing;
  payload["reasked"] = reasked;
  ctx.recorder.record(EntryKind::reflection, payload);
  return r;
}

std::vector<std::string> parse_strategy_lines(std::string_view response) {
  static const std::regex item(R"(^\s*(?:[-*+•]|[0-9]+[.)])\s+(.*)$)");
  static const std::regex label(R"(^(?:strategy|new strategy)\s*[0-9]*\s*[:.-]\s*(.*)$)", std::regex::icase);
  std::vector<std::string> bulleted, plain;
  bool in_fence = false;
  for (const auto& raw : text::split_lines(response)) {
    const std::string t = text::trim(raw);
    if (text::starts_with(t, "```")) {
      in_fence = !in_fence;
      continue;
    }
    if (in_fence || t.empty() || t[0] == '@') continue;
    std::smatch m;
    std::string body;
    bool is_item = false;
    if (std::regex_match(raw, m, item)) {
      body = m[1].str();
      is_item = true;
    } else {
      body = t;
    }
    body = header_text(body);
    if (std::regex_match(body, m, label)) {
      body = text::trim(m[1].str());
      is_item = true;
    }
    if (body.empty() || body.back() == ':') continue;
    (is_item ? bulleted : plain).push_back(body);
  }
  return bulleted.empty() ? plain : bulleted;
}

SynthesisResult synthesize_strategies(const PolicyVersion& policy, const AgentState& /*state*/,
                                      const std::vector<Reflection>& reflections, const std::vector<Strategy>& prior,
                                      RepairContext& ctx) {
  const std::string prompt = strategy_synthesis_prompt(reflections, policy.source, prior);
  const std::string tag = "strategy/" + std::to_string(ctx.iteration());
  const std::string reply = ctx.ask(llm::make_request("", prompt, tag)).texts.front();

  SynthesisResult res;
  std::set<std::string> seen;
  for (const auto& s : prior) seen.insert(s.normalized);
  const auto lines = parse_strategy_lines(reply);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Strategy s = Strategy::make(lines[i], ctx.iteration());
    if (i >= static_cast<std::size_t>(kMaxStrategiesPerCycle) || s.normalized.empty() ||
        !seen.insert(s.normalized).second) {
      res.dropped.push_back(lines[i]);
      continue;
    }
    ctx.recorder.record(EntryKind::strategy, s);
    res.kept.push_back(std::move(s));
  }
  return res;
}

std::optional<std::string> check_patch_body(std::string_view body, PatchMode mode, std::size_t policy_lines) {
  if (text::trim(body).empty()) return "empty patch";
  if (mode == PatchMode::anchored) {
    try {
      policylang::check_patch(policylang::parse_patch_body(body), policy_lines);
    } catch (const policylang::PatchError& e) {
      return std::string(e.what());
    }
    return std::nullopt;
  }
  static const std::set<std::string> keywords{"LET", "PROMPT", "CALL", "EXTRACT", "VOTE",
                                              "IF",  "ELSE",   "END",  "RETURN"};
  bool in_heredoc = false;
  int lineno = 0;
  for (const auto& raw : text::split_lines(body)) {
    ++lineno;
    const std::string t = text::trim(raw);
    if (in_heredoc) {
      if (t.find(">>>") != std::string::npos) in_heredoc = false;
      continue;
    }
    if (t.empty() || t[0] == '#') continue;
    std::size_t end = 0;
    while (end < t.size() && std::isalpha(static_cast<unsigned char>(t[end]))) ++end;
    const std::string word = t.substr(0, end);
    if (!keywords.count(word) || (end < t.size() && t[end] != ' ' && t[end] != '\t')) {
      return "line " + std::to_string(lineno) + " is not a policy statement: '" + t.substr(0, 60) + "'";
    }
    const auto open = t.find("<<<");
    if (word == "PROMPT" && open != std::string::npos && t.find(">>>", open + 3) == std::string::npos) {
      in_heredoc = true;
    }
  }
  if (in_heredoc) return "unterminated PROMPT heredoc";
  return std::nullopt;
}

std::vector<std::pair<const Strategy*, std::string>> pair_sections(
    const std::vector<policylang::PatchSection>& sections, const std::vector<Strategy>& strategies) {
  std::vector<std::pair<const Strategy*, std::string>> out;
  std::vector<bool> used_strategy(strategies.size(), false);
  std::vector<bool> used_section(sections.size(), false);
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const std::string norm = text::normalize_directive(sections[i].strategy);
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      if (!used_strategy[k] && strategies[k].normalized == norm) {
        used_strategy[k] = used_section[i] = true;
        out.emplace_back(&strategies[k], sections[i].body);
        break;
      }
    }
  }
  // leftovers pair up in order
  std::size_t k = 0;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (used_section[i]) continue;
    while (k < strategies.size() && used_strategy[k]) ++k;
    if (k == strategies.size()) break;
    used_strategy[k] = true;
    out.emplace_back(&strategies[k], sections[i].body);
  }
  return out;
}

PatchGenerationResult generate_patches(const PolicyVersion& policy, const std::vector<Strategy>& strategies,
                                       RepairContext& ctx) {
  PatchGenerationResult res;
  const std::size_t n_lines = text::split_lines(policy.source).size();
  const std::string prompt = patch_generation_prompt(policy.source, strategies, ctx.mode);
  const std::string it = std::to_string(ctx.iteration());
  const std::string reply = ctx.ask(llm::make_request("", prompt, "patch/" + it)).texts.front();
  res.responses.push_back(reply);

  std::vector<std::optional<Patch>> accepted(strategies.size());
  std::vector<std::pair<std::string, std::string>> problems;  // (strategy text, reason)
  auto absorb = [&](const std::string& response, bool record_problems) {
    problems.clear();
    const auto pairs = pair_sections(policylang::parse_patch_sections(response), strategies);
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      if (accepted[k]) continue;
      std::optional<std::string> why = "no patch section for this strategy";
      std::string body;
      for (const auto& [s, b] : pairs) {
        if (s == &strategies[k]) {
          body = b;
          why = check_patch_body(b, ctx.mode, n_lines);
          break;
        }
      }
      if (why) {
        problems.emplace_back(strategies[k].text, *why);
        if (record_problems) res.problems.push_back(strategies[k].text + ": " + *why);
      } else {
        accepted[k] = Patch{strategies[k].id, body, ctx.mode};
      }
    }
  };
  absorb(reply, false);
  if (!problems.empty()) {
    for (const auto& [s, why] : problems) res.problems.push_back(s + ": " + why);
    const std::string again =
        ctx.ask(follow_up(prompt, reply, patch_reask_prompt(problems, ctx.mode), "patch_reask/" + it)).texts.front();
    res.responses.push_back(again);
    absorb(again, true);
  }
  for (auto& p : accepted) {
    if (p) res.patches.push_back(std::move(*p));
  }
  return res;
}

}  // namespace polaris::repair
