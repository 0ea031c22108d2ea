#include "polaris/policylang/diff.hpp"

#include <algorithm>

#include "polaris/core/text.hpp"

namespace polaris::policylang {

DiffView render_diff(std::string_view old_source, std::string_view new_source) {
  const auto a = text::split_lines(old_source);
  const auto b = text::split_lines(new_source);

  // Trim the common prefix/suffix so the quadratic table stays small.
  std::size_t pre = 0;
  while (pre < a.size() && pre < b.size() && a[pre] == b[pre]) ++pre;
  std::size_t suf = 0;
  while (suf < a.size() - pre && suf < b.size() - pre && a[a.size() - 1 - suf] == b[b.size() - 1 - suf]) ++suf;

  const std::size_t n = a.size() - pre - suf;
  const std::size_t m = b.size() - pre - suf;
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[pre + i] == b[pre + j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }

  DiffView view;
  auto keep = [&](std::size_t i, std::size_t j) {
    view.lines.push_back({DiffKind::unchanged, a[i], static_cast<int>(i + 1), static_cast<int>(j + 1)});
  };
  for (std::size_t k = 0; k < pre; ++k) keep(k, k);

  std::size_t i = 0, j = 0;
  std::vector<DiffLine> dels, adds;
  auto flush = [&] {
    view.lines.insert(view.lines.end(), dels.begin(), dels.end());
    view.lines.insert(view.lines.end(), adds.begin(), adds.end());
    dels.clear();
    adds.clear();
  };
  while (i < n || j < m) {
    if (i < n && j < m && a[pre + i] == b[pre + j]) {
      flush();
      keep(pre + i, pre + j);
      ++i;
      ++j;
    } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
      adds.push_back({DiffKind::added, b[pre + j], 0, static_cast<int>(pre + j + 1)});
      ++view.added;
      ++j;
    } else {
      dels.push_back({DiffKind::deleted, a[pre + i], static_cast<int>(pre + i + 1), 0});
      ++view.deleted;
      ++i;
    }
  }
  flush();
  for (std::size_t k = 0; k < suf; ++k) keep(pre + n + k, pre + m + k);
  return view;
}

std::string DiffView::unified(std::string_view old_name, std::string_view new_name, int context) const {
  if (added == 0 && deleted == 0) return {};
  std::string out = "--- " + std::string(old_name) + "\n+++ " + std::string(new_name) + "\n";
  const int total = static_cast<int>(lines.size());
  int idx = 0;
  while (idx < total) {
    while (idx < total && lines[idx].kind == DiffKind::unchanged) ++idx;
    if (idx == total) break;
    // Grow the hunk while changes are within 2*context of each other.
    const int start = std::max(0, idx - context);
    int end = idx;
    int last_change = idx;
    while (end < total) {
      if (lines[end].kind != DiffKind::unchanged) {
        last_change = end;
      } else if (end - last_change > 2 * context) {
        break;
      }
      ++end;
    }
    end = std::min(total, last_change + context + 1);

    int old_start = 0, new_start = 0, old_count = 0, new_count = 0;
    // Starting coordinates: the first line in the hunk with a number on
    // each side, or the position just before it.
    int prev_old = 0, prev_new = 0;
    for (int k = 0; k < start; ++k) {
      if (lines[k].old_line) prev_old = lines[k].old_line;
      if (lines[k].new_line) prev_new = lines[k].new_line;
    }
    std::string body;
    for (int k = start; k < end; ++k) {
      const DiffLine& l = lines[k];
      char mark = ' ';
      if (l.kind == DiffKind::added) mark = '+';
      if (l.kind == DiffKind::deleted) mark = '-';
      if (l.kind != DiffKind::added) {
        ++old_count;
        if (!old_start) old_start = l.old_line;
      }
      if (l.kind != DiffKind::deleted) {
        ++new_count;
        if (!new_start) new_start = l.new_line;
      }
      body += mark + l.text + "\n";
    }
    if (!old_start) old_start = prev_old;  // empty side: line before the hunk
    if (!new_start) new_start = prev_new;
    auto range = [](int s, int c) { return c == 1 ? std::to_string(s) : std::to_string(s) + "," + std::to_string(c); };
    out += "@@ -" + range(old_start, old_count) + " +" + range(new_start, new_count) + " @@\n" + body;
    idx = end;
  }
  return out;
}

}  // namespace polaris::policylang
