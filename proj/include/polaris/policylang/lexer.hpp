#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace polaris::policylang {

enum class TokenKind { identifier, number, string, symbol, heredoc_open, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;  // strings are unescaped
  int column = 0;    // 0-based offset into the line
};

/// Tokenizes one source line. `rest_after_heredoc` receives the raw text
/// following a `<<<` token (the lexer stops there). Throws std::invalid_argument
/// with a human-readable message on a malformed token.
std::vector<Token> tokenize_line(std::string_view line, std::string* rest_after_heredoc = nullptr);

bool is_identifier(std::string_view s);
bool is_keyword(std::string_view s);

/// Quotes and escapes a string literal (backslash and double quote only).
std::string quote(std::string_view s);

}  // namespace polaris::policylang
