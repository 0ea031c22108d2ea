#include "polaris/policylang/patch.hpp"

#include <algorithm>
#include <cstdio>
#include <regex>

#include "polaris/core/text.hpp"

namespace polaris::policylang {

namespace {

/// Position of an op on a doubled axis: line i sits at 2i, the gap after
/// line i at 2i+1.
struct Extent {
  int lo = 0;
  int hi = 0;
};

Extent extent_of(const PatchOp& op) {
  return std::visit(
      [](const auto& o) -> Extent {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, InsertAfterOp>) {
          return {2 * o.line + 1, 2 * o.line + 1};
        } else {
          return {2 * o.first, 2 * o.last};
        }
      },
      op);
}

std::string describe(const PatchOp& op) {
  return std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ReplaceOp>) {
          return "REPLACE " + std::to_string(o.first) + "-" + std::to_string(o.last);
        } else if constexpr (std::is_same_v<T, InsertAfterOp>) {
          return "INSERT AFTER " + std::to_string(o.line);
        } else {
          return "DELETE " + std::to_string(o.first) + "-" + std::to_string(o.last);
        }
      },
      op);
}

bool is_fence(std::string_view line) { return text::starts_with(text::trim(line), "```"); }

void trim_trailing_blank(std::vector<std::string>& lines) {
  while (!lines.empty() && text::trim(lines.back()).empty()) lines.pop_back();
}

}  // namespace

AnchoredPatch parse_patch_body(std::string_view body) {
  static const std::regex range_re(R"(^@ *(REPLACE|DELETE) +([0-9]+)(?: *- *([0-9]+))? *$)");
  static const std::regex insert_re(R"(^@ *INSERT +AFTER +([0-9]+) *$)");

  AnchoredPatch patch;
  std::vector<std::string>* current = nullptr;
  bool in_delete = false;
  int lineno = 0;
  for (const std::string& raw : text::split_lines(body)) {
    ++lineno;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::starts_with(text::trim(line), "@")) {
      if (current) trim_trailing_blank(*current);
      std::smatch m;
      const std::string directive = text::trim(line);
      if (std::regex_match(directive, m, range_re)) {
        const int a = std::stoi(m[2].str());
        const int b = m[3].matched ? std::stoi(m[3].str()) : a;
        if (m[1] == "REPLACE") {
          patch.ops.emplace_back(ReplaceOp{a, b, {}});
          current = &std::get<ReplaceOp>(patch.ops.back()).lines;
          in_delete = false;
        } else {
          patch.ops.emplace_back(DeleteOp{a, b});
          current = nullptr;
          in_delete = true;
        }
      } else if (std::regex_match(directive, m, insert_re)) {
        patch.ops.emplace_back(InsertAfterOp{std::stoi(m[1].str()), {}});
        current = &std::get<InsertAfterOp>(patch.ops.back()).lines;
        in_delete = false;
      } else {
        throw PatchError("patch line " + std::to_string(lineno) + ": malformed directive '" + directive + "'");
      }
      continue;
    }
    if (current) {
      current->push_back(line);
    } else if (!text::trim(line).empty() && !is_fence(line)) {
      throw PatchError("patch line " + std::to_string(lineno) + ": text outside a patch block" +
                       (in_delete ? " (DELETE takes no lines)" : ""));
    }
  }
  if (current) trim_trailing_blank(*current);
  if (patch.ops.empty()) throw PatchError("patch contains no directives");
  for (const auto& op : patch.ops) {
    if (const auto* r = std::get_if<ReplaceOp>(&op); r && r->lines.empty()) {
      throw PatchError(describe(op) + " has no replacement lines (use DELETE)");
    }
    if (const auto* i = std::get_if<InsertAfterOp>(&op); i && i->lines.empty()) {
      throw PatchError(describe(op) + " has no lines to insert");
    }
  }
  return patch;
}

std::string format_patch_body(const AnchoredPatch& patch) {
  std::string out;
  for (const auto& op : patch.ops) {
    out += "@ " + describe(op) + "\n";
    std::visit(
        [&out](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (!std::is_same_v<T, DeleteOp>) {
            for (const auto& l : o.lines) out += l + "\n";
          }
        },
        op);
  }
  return out;
}

void check_patch(const AnchoredPatch& patch, std::size_t line_count) {
  const int n = static_cast<int>(line_count);
  std::vector<std::pair<Extent, std::size_t>> extents;
  for (std::size_t i = 0; i < patch.ops.size(); ++i) {
    const PatchOp& op = patch.ops[i];
    const bool ok = std::visit(
        [n](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, InsertAfterOp>) {
            return o.line >= 0 && o.line <= n;
          } else {
            return o.first >= 1 && o.first <= o.last && o.last <= n;
          }
        },
        op);
    if (!ok) {
      throw PatchError(describe(op) + " is out of bounds (source has " + std::to_string(n) + " lines)");
    }
    extents.emplace_back(extent_of(op), i);
  }
  std::sort(extents.begin(), extents.end(), [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
  for (std::size_t i = 1; i < extents.size(); ++i) {
    if (extents[i].first.lo <= extents[i - 1].first.hi) {
      throw PatchError(describe(patch.ops[extents[i - 1].second]) + " overlaps " +
                       describe(patch.ops[extents[i].second]));
    }
  }
}

std::string apply_patch(std::string_view source, const AnchoredPatch& patch) {
  std::vector<std::string> lines = text::split_lines(source);
  check_patch(patch, lines.size());
  std::vector<const PatchOp*> order;
  for (const auto& op : patch.ops) order.push_back(&op);
  std::sort(order.begin(), order.end(),
            [](const PatchOp* a, const PatchOp* b) { return extent_of(*a).lo > extent_of(*b).lo; });
  for (const PatchOp* op : order) {
    std::visit(
        [&lines](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, ReplaceOp>) {
            lines.erase(lines.begin() + (o.first - 1), lines.begin() + o.last);
            lines.insert(lines.begin() + (o.first - 1), o.lines.begin(), o.lines.end());
          } else if constexpr (std::is_same_v<T, InsertAfterOp>) {
            lines.insert(lines.begin() + o.line, o.lines.begin(), o.lines.end());
          } else {
            lines.erase(lines.begin() + (o.first - 1), lines.begin() + o.last);
          }
        },
        *op);
  }
  const bool trailing = source.empty() ? !lines.empty() : text::ends_with_newline(source);
  return text::join_lines(lines, trailing);
}

AnchoredPatch merge_patches(const std::vector<AnchoredPatch>& patches) {
  AnchoredPatch merged;
  for (const auto& p : patches) merged.ops.insert(merged.ops.end(), p.ops.begin(), p.ops.end());
  return merged;
}

std::vector<PatchSection> parse_patch_sections(std::string_view response) {
  std::vector<PatchSection> sections;
  enum class Where { none, strategy, patch } where = Where::none;
  std::vector<std::string> body;
  auto flush = [&] {
    if (sections.empty()) return;
    while (!body.empty() && (text::trim(body.front()).empty() || is_fence(body.front()))) body.erase(body.begin());
    while (!body.empty() && (text::trim(body.back()).empty() || is_fence(body.back()))) body.pop_back();
    sections.back().body = text::join_lines(body, !body.empty());
    body.clear();
  };
  for (const std::string& raw : text::split_lines(response)) {
    const std::string t = text::trim(raw);
    // tolerate bold markers the models like to add: **### Strategy:**
    std::string bare;
    for (char c : t) {
      if (c != '*') bare.push_back(c);
    }
    bare = text::trim(bare);
    if (text::starts_with(bare, "### Strategy:")) {
      flush();
      sections.push_back(PatchSection{text::trim(bare.substr(13)), ""});
      where = Where::strategy;
    } else if (text::starts_with(bare, "### Patch:")) {
      if (sections.empty()) sections.push_back(PatchSection{});
      where = Where::patch;
      body.clear();
      const std::string rest = text::trim(bare.substr(10));
      if (!rest.empty()) body.push_back(rest);
    } else if (where == Where::patch) {
      std::string line = raw;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      body.push_back(line);
    }
  }
  flush();
  return sections;
}

std::string format_patch_sections(const std::vector<PatchSection>& sections) {
  std::string out;
  for (const auto& s : sections) {
    out += "### Strategy: " + s.strategy + "\n### Patch:\n" + s.body;
    if (!s.body.empty() && s.body.back() != '\n') out += "\n";
  }
  return out;
}

std::string number_lines(std::string_view source) {
  const auto lines = text::split_lines(source);
  std::string out;
  char buf[16];
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%3zu| ", i + 1);
    out += buf + lines[i] + "\n";
  }
  return out;
}

}  // namespace polaris::policylang
