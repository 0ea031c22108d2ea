#pragma once

#include <string>

#include "polaris/policylang/ast.hpp"

namespace polaris::policylang {

/// Canonical source text: one statement per line, two-space indentation
/// inside IF blocks, heredoc prompts in multi-line form, no comments.
std::string to_source(const ProgramAST& ast);

}  // namespace polaris::policylang
