#include "polaris/policylang/lexer.hpp"

#include <array>
#include <cctype>
#include <stdexcept>

#include "polaris/policylang/diagnostics.hpp"

namespace polaris::policylang {

namespace {

constexpr std::array<std::string_view, 14> kKeywords = {"LET",  "PROMPT",   "CALL",  "LLM",  "EXTRACT",
                                                        "MATCH", "VOTE",    "MAJORITY", "IF", "THEN",
                                                        "ELSE", "END",      "RETURN", "task_input"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string format_diagnostics(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += "\n";
    out += (d.line > 0 ? "line " + std::to_string(d.line) + ": " : std::string()) + d.message;
  }
  return out;
}

ParseError::ParseError(std::vector<Diagnostic> diags)
    : Error(format_diagnostics(diags)), diags_(std::move(diags)) {}

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s) {
    if (!ident_char(c)) return false;
  }
  return true;
}

bool is_keyword(std::string_view s) {
  for (auto k : kKeywords) {
    if (k == s) return true;
  }
  return false;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<Token> tokenize_line(std::string_view line, std::string* rest_after_heredoc) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token tok;
    tok.column = static_cast<int>(i);
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      tok.kind = TokenKind::identifier;
      tok.text = std::string(line.substr(i, j - i));
      i = j;
    } else if (digit(c) || (c == '-' && i + 1 < line.size() && digit(line[i + 1]))) {
      std::size_t j = i + 1;
      while (j < line.size() && digit(line[j])) ++j;
      if (j + 1 < line.size() && line[j] == '.' && digit(line[j + 1])) {
        ++j;
        while (j < line.size() && digit(line[j])) ++j;
      }
      tok.kind = TokenKind::number;
      tok.text = std::string(line.substr(i, j - i));
      i = j;
    } else if (c == '"') {
      std::string value;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < line.size()) {
        const char d = line[j];
        if (d == '\\' && j + 1 < line.size() && (line[j + 1] == '"' || line[j + 1] == '\\')) {
          value.push_back(line[j + 1]);
          j += 2;
          continue;
        }
        if (d == '"') {
          closed = true;
          ++j;
          break;
        }
        value.push_back(d);
        ++j;
      }
      if (!closed) throw std::invalid_argument("unterminated string literal");
      tok.kind = TokenKind::string;
      tok.text = std::move(value);
      i = j;
    } else if (line.substr(i, 3) == "<<<") {
      tok.kind = TokenKind::heredoc_open;
      tok.text = "<<<";
      tokens.push_back(tok);
      if (rest_after_heredoc) *rest_after_heredoc = std::string(line.substr(i + 3));
      tokens.push_back(Token{TokenKind::end, "", static_cast<int>(line.size())});
      return tokens;
    } else {
      static constexpr std::array<std::string_view, 4> kTwo = {"==", "!=", "<=", ">="};
      bool matched = false;
      for (auto op : kTwo) {
        if (line.substr(i, 2) == op) {
          tok.kind = TokenKind::symbol;
          tok.text = std::string(op);
          i += 2;
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string_view("=()[],.*<>").find(c) == std::string_view::npos) {
          throw std::invalid_argument(std::string("unexpected character '") + c + "'");
        }
        tok.kind = TokenKind::symbol;
        tok.text = std::string(1, c);
        ++i;
      }
    }
    tokens.push_back(std::move(tok));
  }
  tokens.push_back(Token{TokenKind::end, "", static_cast<int>(line.size())});
  return tokens;
}

}  // namespace polaris::policylang
