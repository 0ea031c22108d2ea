#include "polaris/eval/metrics.hpp"

#include <cctype>
#include <map>

#include "polaris/core/error.hpp"
#include "polaris/core/text.hpp"

namespace polaris::eval {

std::string normalize_answer(std::string_view s) {
  const std::string t = text::trim(s);
  if (auto v = text::parse_number(t)) return text::canonical_number(*v);
  return text::to_lower(t);
}

bool exact_match(std::string_view predicted, std::string_view target) {
  return normalize_answer(predicted) == normalize_answer(target);
}

namespace {

std::vector<std::string> f1_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (auto v = text::parse_number(cur)) {
      out.push_back(text::canonical_number(*v));
    } else {
      std::string stripped;
      for (char c : cur) {
        if (!std::ispunct(static_cast<unsigned char>(c))) stripped.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      }
      if (!stripped.empty()) out.push_back(stripped);
    }
    cur.clear();
  };
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

}  // namespace

double token_f1(std::string_view predicted, std::string_view target) {
  const auto p = f1_tokens(predicted);
  const auto g = f1_tokens(target);
  if (p.empty() && g.empty()) return 1.0;
  if (p.empty() || g.empty()) return 0.0;
  std::map<std::string, int> bag;
  for (const auto& t : g) ++bag[t];
  int common = 0;
  for (const auto& t : p) {
    auto it = bag.find(t);
    if (it != bag.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  // 2PR/(P+R) reduced to a single division, so the result is the exact ratio rounded once
  return 2.0 * common / static_cast<double>(p.size() + g.size());
}

std::optional<char> preference_label(std::string_view s) {
  const std::string t = text::trim(s);
  if (t == "A" || t == "a") return 'A';
  if (t == "B" || t == "b") return 'B';
  bool saw_a = false, saw_b = false;
  std::string word;
  auto flush = [&] {
    if (word == "A") saw_a = true;
    if (word == "B") saw_b = true;
    word.clear();
  };
  for (char c : t) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      word.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  if (saw_a == saw_b) return std::nullopt;
  return saw_a ? 'A' : 'B';
}

bool preference_match(std::string_view predicted, std::string_view target) {
  const auto p = preference_label(predicted);
  const auto g = preference_label(target);
  return p && g && *p == *g;
}

double score_instance(Metric m, std::string_view predicted, std::string_view target) {
  switch (m) {
    case Metric::accuracy_ci:
      return exact_match(predicted, target) ? 1.0 : 0.0;
    case Metric::macro_f1:
      return token_f1(predicted, target);
    case Metric::preference_accuracy:
      return preference_match(predicted, target) ? 1.0 : 0.0;
  }
  return 0.0;
}

double accuracy(const std::vector<bool>& correct) {
  if (correct.empty()) throw ParameterError("accuracy of an empty instance list");
  std::size_t k = 0;
  for (bool c : correct) k += c ? 1 : 0;
  return static_cast<double>(k) / static_cast<double>(correct.size());
}

double mean(const std::vector<double>& values) {
  if (values.empty()) throw ParameterError("mean of an empty instance list");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

}  // namespace polaris::eval
