#include "polaris/policylang/parser.hpp"

#include <map>
#include <regex>
#include <stdexcept>

#include "polaris/core/text.hpp"
#include "polaris/policylang/lexer.hpp"

namespace polaris::policylang {

namespace {

struct SyntaxError {
  std::string message;
};

/// Cursor over the tokens of one line.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::end) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == TokenKind::end; }

  bool accept_symbol(std::string_view s) {
    if (peek().kind == TokenKind::symbol && peek().text == s) {
      next();
      return true;
    }
    return false;
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail("expected '" + std::string(s) + "'");
  }
  bool accept_word(std::string_view w) {
    if (peek().kind == TokenKind::identifier && peek().text == w) {
      next();
      return true;
    }
    return false;
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail("expected '" + std::string(w) + "'");
  }
  std::string expect_identifier(std::string_view what) {
    if (peek().kind != TokenKind::identifier) fail("expected " + std::string(what));
    return next().text;
  }
  void expect_end() {
    if (!at_end()) fail("unexpected '" + describe(peek()) + "'");
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::string where = at_end() ? " at end of line" : " near '" + describe(peek()) + "'";
    throw SyntaxError{message + where};
  }

 private:
  static std::string describe(const Token& t) {
    return t.kind == TokenKind::string ? "\"" + t.text + "\"" : t.text;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::optional<CmpOp> cmp_from(std::string_view s) {
  if (s == "==") return CmpOp::eq;
  if (s == "!=") return CmpOp::ne;
  if (s == "<") return CmpOp::lt;
  if (s == "<=") return CmpOp::le;
  if (s == ">") return CmpOp::gt;
  if (s == ">=") return CmpOp::ge;
  return std::nullopt;
}

Expr parse_expr(TokenStream& ts, bool allow_identifier) {
  const Token& t = ts.peek();
  if (t.kind == TokenKind::string) return Expr{Expr::Kind::string, ts.next().text};
  if (t.kind == TokenKind::number) return Expr{Expr::Kind::number, ts.next().text};
  if (allow_identifier && t.kind == TokenKind::identifier) return Expr{Expr::Kind::identifier, ts.next().text};
  ts.fail(allow_identifier ? "expected identifier or literal" : "expected literal");
}

class Parser {
 public:
  explicit Parser(std::string_view source) : lines_(text::split_lines(source)) {}

  ParseResult run() {
    ParseResult result;
    ProgramAST ast;
    std::string terminator;
    ast.statements = parse_block({}, terminator);
    if (diags_.empty()) check(ast);
    result.diagnostics = std::move(diags_);
    if (result.diagnostics.empty()) result.ast = std::move(ast);
    return result;
  }

 private:
  int lineno() const { return static_cast<int>(pos_) + 1; }
  void error(int line, std::string message) { diags_.push_back({line, std::move(message)}); }

  /// Parses statements until one of `terminators` (ELSE/END) opens a line.
  std::vector<Statement> parse_block(const std::vector<std::string>& terminators, std::string& hit) {
    std::vector<Statement> out;
    hit.clear();
    while (pos_ < lines_.size()) {
      const std::string trimmed = text::trim(lines_[pos_]);
      if (trimmed.empty() || trimmed[0] == '#') {
        ++pos_;
        continue;
      }
      const int line = lineno();
      std::string rest;
      std::vector<Token> tokens;
      try {
        tokens = tokenize_line(lines_[pos_], &rest);
      } catch (const std::invalid_argument& e) {
        error(line, e.what());
        ++pos_;
        continue;
      }
      const std::string head = tokens.front().kind == TokenKind::identifier ? tokens.front().text : "";
      for (const auto& t : terminators) {
        if (head == t) {
          hit = head;
          TokenStream ts(tokens);
          ts.next();
          try {
            ts.expect_end();
          } catch (const SyntaxError& e) {
            error(line, e.message);
          }
          ++pos_;
          return out;
        }
      }
      if (head == "ELSE" || head == "END") {
        error(line, "unexpected " + head);
        ++pos_;
        continue;
      }
      try {
        if (auto stmt = parse_statement(TokenStream(tokens), rest, line)) out.push_back(std::move(*stmt));
      } catch (const SyntaxError& e) {
        error(line, e.message);
        ++pos_;
      }
    }
    return out;
  }

  /// Parses the statement on the current line and advances past it
  /// (including heredoc bodies and IF blocks).
  std::optional<Statement> parse_statement(TokenStream ts, const std::string& heredoc_rest, int line) {
    const std::string head = ts.expect_identifier("statement keyword");
    Statement stmt;
    stmt.span = {line, line};
    if (head == "LET") {
      LetStmt s;
      s.name = definition_name(ts);
      ts.expect_symbol("=");
      s.value = parse_expr(ts, false);
      ts.expect_end();
      stmt.node = std::move(s);
    } else if (head == "PROMPT") {
      PromptStmt s;
      s.name = definition_name(ts);
      if (ts.peek().kind != TokenKind::heredoc_open) ts.fail("expected '<<<'");
      ts.next();
      const std::string first = text::trim(heredoc_rest);
      const std::string_view close = ">>>";
      if (first.size() >= close.size() && first.compare(first.size() - close.size(), close.size(), close) == 0) {
        // single-line form: PROMPT p <<< text >>>
        s.lines.push_back(text::trim(std::string_view(first).substr(0, first.size() - close.size())));
      } else {
        if (!first.empty()) s.lines.push_back(first);
        std::size_t j = pos_ + 1;
        bool closed = false;
        for (; j < lines_.size(); ++j) {
          if (text::trim(lines_[j]) == close) {
            closed = true;
            break;
          }
          s.lines.push_back(lines_[j]);
        }
        if (!closed) {
          error(line, "unterminated PROMPT heredoc (missing '>>>')");
          pos_ = lines_.size();
          return std::nullopt;
        }
        stmt.span.last = static_cast<int>(j) + 1;
        pos_ = j;
      }
      stmt.node = std::move(s);
    } else if (head == "CALL") {
      stmt.node = parse_call(ts);
    } else if (head == "EXTRACT") {
      const std::string name = definition_name(ts);
      ts.expect_symbol("=");
      if (ts.accept_word("MATCH")) {
        ExtractMatchStmt s;
        s.name = name;
        ts.expect_symbol("(");
        s.source = ts.expect_identifier("source identifier");
        ts.expect_symbol(",");
        if (ts.peek().kind != TokenKind::string) ts.fail("expected pattern string");
        s.pattern = ts.next().text;
        ts.expect_symbol(")");
        ts.expect_end();
        try {
          std::regex re(s.pattern, std::regex::extended);
        } catch (const std::regex_error& e) {
          throw SyntaxError{"invalid MATCH pattern: " + std::string(e.what())};
        }
        stmt.node = std::move(s);
      } else {
        ExtractFieldStmt s;
        s.name = name;
        s.source = ts.expect_identifier("source identifier");
        ts.expect_symbol("[");
        if (ts.peek().kind != TokenKind::number || ts.peek().text.find_first_of(".-") != std::string::npos) {
          ts.fail("expected non-negative integer index");
        }
        s.index = std::stoi(ts.next().text);
        ts.expect_symbol("]");
        ts.expect_symbol(".");
        s.field = ts.expect_identifier("field name");
        ts.expect_end();
        stmt.node = std::move(s);
      }
    } else if (head == "VOTE") {
      VoteStmt s;
      s.name = definition_name(ts);
      ts.expect_symbol("=");
      ts.expect_word("MAJORITY");
      ts.expect_symbol("(");
      s.source = ts.expect_identifier("source identifier");
      ts.expect_symbol("[");
      ts.expect_symbol("*");
      ts.expect_symbol("]");
      ts.expect_symbol(".");
      s.field = ts.expect_identifier("field name");
      ts.expect_symbol(")");
      ts.expect_end();
      stmt.node = std::move(s);
    } else if (head == "IF") {
      IfStmt s;
      s.lhs = ts.expect_identifier("identifier");
      const Token& op = ts.next();
      const auto cmp = op.kind == TokenKind::symbol ? cmp_from(op.text) : std::nullopt;
      if (!cmp) throw SyntaxError{"expected comparison operator (==, !=, <, <=, >, >=)"};
      s.op = *cmp;
      s.rhs = parse_expr(ts, false);
      ts.expect_word("THEN");
      ts.expect_end();
      ++pos_;
      std::string hit;
      s.then_body = parse_block({"ELSE", "END"}, hit);
      if (hit == "ELSE") {
        s.has_else = true;
        s.else_body = parse_block({"END"}, hit);
      }
      if (hit != "END") {
        error(line, "IF without matching END");
        return std::nullopt;
      }
      stmt.span.last = lineno() - 1;
      stmt.node = std::move(s);
      return stmt;
    } else if (head == "RETURN") {
      ReturnStmt s;
      do {
        const std::string field = ts.expect_identifier("field name");
        ts.expect_symbol("=");
        for (const auto& [existing, _] : s.fields) {
          if (existing == field) throw SyntaxError{"duplicate RETURN field '" + field + "'"};
        }
        s.fields.emplace_back(field, parse_expr(ts, true));
      } while (ts.accept_symbol(","));
      ts.expect_end();
      stmt.node = std::move(s);
    } else {
      throw SyntaxError{"unknown statement '" + head + "'"};
    }
    ++pos_;
    return stmt;
  }

  CallStmt parse_call(TokenStream& ts) {
    CallStmt s;
    s.name = definition_name(ts);
    ts.expect_symbol("=");
    ts.expect_word("LLM");
    ts.expect_symbol("(");
    bool has_role = false, has_prompt = false, has_require = false;
    std::map<std::string, bool> seen;
    if (!ts.accept_symbol(")")) {
      do {
        const std::string key = ts.expect_identifier("argument name");
        if (seen[key]) ts.fail("duplicate argument '" + key + "'");
        seen[key] = true;
        ts.expect_symbol("=");
        if (key == "role") {
          if (ts.peek().kind != TokenKind::string) ts.fail("role must be a string");
          s.role = ts.next().text;
          has_role = true;
        } else if (key == "temperature") {
          if (ts.peek().kind != TokenKind::number) ts.fail("temperature must be a number");
          s.temperature = std::stod(ts.next().text);
          if (s.temperature < 0) throw SyntaxError{"temperature must be >= 0"};
        } else if (key == "n") {
          if (ts.peek().kind != TokenKind::number || ts.peek().text.find('.') != std::string::npos) {
            ts.fail("n must be an integer");
          }
          s.n = std::stoi(ts.next().text);
          if (s.n < 1) throw SyntaxError{"n must be >= 1"};
        } else if (key == "prompt") {
          s.prompt = ts.expect_identifier("prompt identifier");
          has_prompt = true;
        } else if (key == "require") {
          ts.expect_symbol("[");
          has_require = true;
          if (!ts.accept_symbol("]")) {
            do {
              const Token& t = ts.next();
              if (t.kind != TokenKind::identifier && t.kind != TokenKind::string) {
                throw SyntaxError{"require entries must be field names"};
              }
              s.require.push_back(t.text);
            } while (ts.accept_symbol(","));
            ts.expect_symbol("]");
          }
        } else {
          throw SyntaxError{"unknown LLM argument '" + key + "'"};
        }
      } while (ts.accept_symbol(","));
      ts.expect_symbol(")");
    }
    ts.expect_end();
    if (!has_role) throw SyntaxError{"CALL requires role=\"...\""};
    if (!has_prompt) throw SyntaxError{"CALL requires prompt=<identifier>"};
    if (!has_require) s.require = {"answer"};
    return s;
  }

  static std::string definition_name(TokenStream& ts) {
    const std::string name = ts.expect_identifier("identifier");
    if (is_keyword(name)) throw SyntaxError{"'" + name + "' is reserved"};
    return name;
  }

  // ---- static checks -------------------------------------------------------

  enum class Kind { text, responses };
  using Env = std::map<std::string, Kind>;

  struct BlockInfo {
    bool returns = false;
    Env env;
  };

  void check(const ProgramAST& ast) {
    Env env{{std::string(kTaskInput), Kind::text}};
    const BlockInfo info = check_block(ast.statements, env);
    if (!info.returns) error(0, "no RETURN on every execution path (a RETURN answer=... is required)");
  }

  void require_defined(const Env& env, const std::string& name, Kind kind, int line) {
    auto it = env.find(name);
    if (it == env.end()) {
      error(line, "undefined identifier '" + name + "'");
    } else if (it->second != kind) {
      error(line, "'" + name + "' is " + (it->second == Kind::text ? "text" : "a CALL result") + ", expected " +
                      (kind == Kind::text ? "text" : "a CALL result"));
    }
  }

  BlockInfo check_block(const std::vector<Statement>& stmts, Env env) {
    BlockInfo info;
    bool reported_unreachable = false;
    for (const auto& stmt : stmts) {
      const int line = stmt.span.first;
      if (info.returns) {
        if (!reported_unreachable) error(line, "unreachable statement after RETURN");
        reported_unreachable = true;
        continue;
      }
      std::visit(
          [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, LetStmt>) {
              env[s.name] = Kind::text;
            } else if constexpr (std::is_same_v<T, PromptStmt>) {
              env[s.name] = Kind::text;
            } else if constexpr (std::is_same_v<T, CallStmt>) {
              require_defined(env, s.prompt, Kind::text, line);
              env[s.name] = Kind::responses;
            } else if constexpr (std::is_same_v<T, ExtractFieldStmt>) {
              require_defined(env, s.source, Kind::responses, line);
              env[s.name] = Kind::text;
            } else if constexpr (std::is_same_v<T, ExtractMatchStmt>) {
              require_defined(env, s.source, Kind::text, line);
              env[s.name] = Kind::text;
            } else if constexpr (std::is_same_v<T, VoteStmt>) {
              require_defined(env, s.source, Kind::responses, line);
              env[s.name] = Kind::text;
            } else if constexpr (std::is_same_v<T, IfStmt>) {
              require_defined(env, s.lhs, Kind::text, line);
              const BlockInfo then_info = check_block(s.then_body, env);
              const BlockInfo else_info = check_block(s.else_body, env);
              if (then_info.returns && else_info.returns) {
                info.returns = true;
              } else if (then_info.returns) {
                env = else_info.env;
              } else if (else_info.returns) {
                env = then_info.env;
              } else {
                Env merged;
                for (const auto& [name, kind] : then_info.env) {
                  auto it = else_info.env.find(name);
                  if (it != else_info.env.end() && it->second == kind) merged[name] = kind;
                }
                env = std::move(merged);
              }
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
              bool has_answer = false;
              for (const auto& [field, expr] : s.fields) {
                if (field == "answer") has_answer = true;
                if (expr.kind == Expr::Kind::identifier) require_defined(env, expr.text, Kind::text, line);
              }
              if (!has_answer) error(line, "RETURN must bind the field 'answer'");
              info.returns = true;
            }
          },
          stmt.node);
    }
    info.env = std::move(env);
    return info;
  }

  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diags_;
};

}  // namespace

ParseResult try_parse(std::string_view source) {
  if (text::trim(source).empty()) {
    ParseResult r;
    r.diagnostics.push_back({0, "empty policy source"});
    return r;
  }
  return Parser(source).run();
}

ProgramAST parse(std::string_view source) {
  ParseResult r = try_parse(source);
  if (!r.ok()) throw ParseError(std::move(r.diagnostics));
  return std::move(*r.ast);
}

}  // namespace polaris::policylang
