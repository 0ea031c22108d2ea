#pragma once

#include <string>
#include <vector>

#include "polaris/core/error.hpp"

namespace polaris::policylang {

struct Diagnostic {
  int line = 0;  // 1-based; 0 when not tied to a line
  std::string message;
};

std::string format_diagnostics(const std::vector<Diagnostic>& diags);

/// Raised by parse() with every syntax and static-check problem found.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

}  // namespace polaris::policylang
