#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace polaris::policylang {

enum class DiffKind { unchanged, added, deleted };

struct DiffLine {
  DiffKind kind = DiffKind::unchanged;
  std::string text;
  int old_line = 0;  // 0 for added lines
  int new_line = 0;  // 0 for deleted lines
};

struct DiffView {
  std::vector<DiffLine> lines;
  int added = 0;
  int deleted = 0;

  /// Unified diff with `context` lines around each hunk. Empty when
  /// nothing changed.
  std::string unified(std::string_view old_name, std::string_view new_name, int context = 3) const;
};

/// Line diff based on a longest common subsequence. Deletions are listed
/// before additions inside a changed region.
DiffView render_diff(std::string_view old_source, std::string_view new_source);

}  // namespace polaris::policylang
