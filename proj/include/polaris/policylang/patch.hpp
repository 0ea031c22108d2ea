#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polaris/core/error.hpp"

namespace polaris::policylang {

/// Line numbers are 1-based against the pre-patch source.
struct ReplaceOp {
  int first = 0;
  int last = 0;
  std::vector<std::string> lines;
  bool operator==(const ReplaceOp&) const = default;
};

/// line == 0 inserts before the first line.
struct InsertAfterOp {
  int line = 0;
  std::vector<std::string> lines;
  bool operator==(const InsertAfterOp&) const = default;
};

struct DeleteOp {
  int first = 0;
  int last = 0;
  bool operator==(const DeleteOp&) const = default;
};

using PatchOp = std::variant<ReplaceOp, InsertAfterOp, DeleteOp>;

struct AnchoredPatch {
  std::vector<PatchOp> ops;
  bool operator==(const AnchoredPatch&) const = default;
};

class PatchError : public Error {
 public:
  using Error::Error;
};

/// Parses the body of one patch block:
///   @ REPLACE a-b      followed by replacement lines
///   @ INSERT AFTER a   followed by inserted lines
///   @ DELETE a-b       (no lines)
/// Anything other than blank lines before the first directive is rejected.
AnchoredPatch parse_patch_body(std::string_view body);
std::string format_patch_body(const AnchoredPatch& patch);

/// Throws PatchError on out-of-bounds or overlapping spans.
void check_patch(const AnchoredPatch& patch, std::size_t line_count);

/// Applies ops in descending start-line order. Lines outside every op span
/// are copied byte for byte; a trailing newline is preserved.
std::string apply_patch(std::string_view source, const AnchoredPatch& patch);

/// Concatenates the ops of several patches written against the same source.
AnchoredPatch merge_patches(const std::vector<AnchoredPatch>& patches);

/// One "### Strategy: ... / ### Patch: ..." section of a model response.
struct PatchSection {
  std::string strategy;
  std::string body;
};

/// Splits a patch-generation response into sections. Code fences around a
/// body are removed; the body is otherwise returned untouched.
std::vector<PatchSection> parse_patch_sections(std::string_view response);
std::string format_patch_sections(const std::vector<PatchSection>& sections);

/// Renders source with right-aligned line numbers ("  3| LET x = 1").
std::string number_lines(std::string_view source);

}  // namespace polaris::policylang
