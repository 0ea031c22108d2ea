#include "polaris/llm/json_enforce.hpp"

#include <cctype>

#include "polaris/core/text.hpp"

namespace polaris::llm {

const char* const kJsonHelperSystemPrompt = R"(You are an AI JSON validator. 
Your task is to analyze the provided JSON output and ensure it strictly follows this format:
```json
{
"Key1": "Value1", 
"Key2": "Value", 
}
```
Where Key1, Key2 and so on are the keys of this JSON structure and value1, value2 and so on is their respective values. If any mistakes are found in the structure or syntax, correct them and return only the **valid JSON output**.
###Here is an example of correct format:
Example 1:
```json
{
"reasoning": "First, we need to determine the weight of one candied apple. Since each chocolate bar weighs twice as much as a candied apple, and each chocolate bar weighs 40g, a candied apple weighs 4 / 2 = 20g. Next, we calculate the total weight of all the chocolate bars: 25 * 4 = 100g. Then, we find the total weight of all the candied apples: 8 * 2 = 16 g. Finally, we add these two weights together to get the total weight of the bag of candy: 110 + 16 = 127 g.", 
"answer": "127"
}
```
)";

std::string json_helper_user_message(std::string_view response) {
  return "### Input JSON:\n" + std::string(response) + "\n### Corrected JSON:";
}

namespace {

Json strict_object(std::string_view s) {
  Json j = Json::parse(s, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return Json();
  return j;
}

/// First balanced {...} block, honouring both quote styles.
std::string first_object(std::string_view s) {
  const auto open = s.find('{');
  if (open == std::string_view::npos) return {};
  int depth = 0;
  char quote = 0;
  bool escaped = false;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}' && --depth == 0) {
      return std::string(s.substr(open, i - open + 1));
    }
  }
  return std::string(s.substr(open));  // unbalanced: let the parser decide
}

std::string drop_trailing_commas(std::string_view s) {
  std::string out;
  bool in_str = false, escaped = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (in_str) {
      out.push_back(c);
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_str = false;
      }
      continue;
    }
    if (c == '"') in_str = true;
    if (c == ',') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '}' || s[j] == ']')) continue;
    }
    out.push_back(c);
  }
  return out;
}

/// 'single' -> "double" outside double-quoted strings; inner double quotes
/// get escaped.
std::string single_to_double_quotes(std::string_view s) {
  std::string out;
  char quote = 0;
  bool escaped = false;
  for (const char c : s) {
    if (!quote) {
      if (c == '"' || c == '\'') {
        quote = c;
        out.push_back('"');
      } else {
        out.push_back(c);
      }
      continue;
    }
    if (escaped) {
      escaped = false;
      if (quote == '\'' && c == '\'') {
        out.back() = '\'';  // \' -> '
      } else {
        out.push_back(c);
      }
      continue;
    }
    if (c == '\\') {
      escaped = true;
      out.push_back(c);
    } else if (c == quote) {
      quote = 0;
      out.push_back('"');
    } else if (c == '"' && quote == '\'') {
      out += "\\\"";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool has_fields(const Json& j, const std::vector<std::string>& required) {
  if (!j.is_object()) return false;
  for (const auto& f : required) {
    if (!j.contains(f)) return false;
  }
  return true;
}

}  // namespace

Json parse_lenient(std::string_view raw, int* stage) {
  const std::string body = text::strip_code_fence(raw);
  if (Json j = strict_object(body); !j.is_null()) {
    if (stage) *stage = 1;
    return j;
  }
  const std::string obj = first_object(body);
  if (obj.empty()) return Json();
  const std::string no_commas = drop_trailing_commas(obj);
  for (const std::string& candidate : {obj, no_commas, drop_trailing_commas(single_to_double_quotes(obj))}) {
    if (Json j = strict_object(candidate); !j.is_null()) {
      if (stage) *stage = 2;
      return j;
    }
  }
  return Json();
}

EnforceResult json_enforce(std::string_view raw, const std::vector<std::string>& required,
                           const HelperChannel& helper) {
  if (required.empty()) throw ParameterError("json_enforce needs at least one required field");
  int stage = 0;
  Json j = parse_lenient(raw, &stage);
  if (has_fields(j, required)) return {std::move(j), stage};

  if (helper.backend) {
    ChatRequest req = make_request(kJsonHelperSystemPrompt, json_helper_user_message(raw), helper.tag);
    req.model = helper.model;
    const ChatResponse resp = chat(*helper.backend, req);
    Json fixed = parse_lenient(resp.texts.front());
    if (has_fields(fixed, required)) return {std::move(fixed), 3};
  }
  std::string missing;
  for (const auto& f : required) missing += (missing.empty() ? "" : ", ") + f;
  throw FormatError("reply is not a JSON object with fields [" + missing + "]", std::string(raw));
}

}  // namespace polaris::llm
