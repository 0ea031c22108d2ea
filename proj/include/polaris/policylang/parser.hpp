#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "polaris/policylang/ast.hpp"
#include "polaris/policylang/diagnostics.hpp"

namespace polaris::policylang {

/// Name bound to the task text in every program.
inline constexpr std::string_view kTaskInput = "task_input";

struct ParseResult {
  std::optional<ProgramAST> ast;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return ast.has_value(); }
};

/// Parses and statically checks a policy program. Comments (`#`) and blank
/// lines are skipped. Never throws; all problems land in diagnostics.
ParseResult try_parse(std::string_view source);

/// Same as try_parse but throws ParseError on any diagnostic.
ProgramAST parse(std::string_view source);

}  // namespace polaris::policylang
