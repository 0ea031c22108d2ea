#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace polaris::policylang {

/// Inclusive 1-based source line range of a statement.
struct LineSpan {
  int first = 0;
  int last = 0;
};

struct Expr {
  enum class Kind { identifier, string, number };
  Kind kind = Kind::string;
  std::string text;  // identifier name, unescaped string, or number as written

  bool operator==(const Expr&) const = default;
};

enum class CmpOp { eq, ne, lt, le, gt, ge };

struct Statement;

/// LET name = "text" | number
struct LetStmt {
  std::string name;
  Expr value;
  bool operator==(const LetStmt&) const = default;
};

/// PROMPT name <<< ... >>>
struct PromptStmt {
  std::string name;
  std::vector<std::string> lines;
  bool operator==(const PromptStmt&) const = default;
};

/// CALL name = LLM(role=..., temperature=..., n=..., prompt=..., require=[...])
struct CallStmt {
  std::string name;
  std::string role;
  double temperature = 0.0;
  int n = 1;
  std::string prompt;
  std::vector<std::string> require;
  bool operator==(const CallStmt&) const = default;
};

/// EXTRACT name = source[index].field
struct ExtractFieldStmt {
  std::string name;
  std::string source;
  int index = 0;
  std::string field;
  bool operator==(const ExtractFieldStmt&) const = default;
};

/// EXTRACT name = MATCH(source, "pattern")
struct ExtractMatchStmt {
  std::string name;
  std::string source;
  std::string pattern;
  bool operator==(const ExtractMatchStmt&) const = default;
};

/// VOTE name = MAJORITY(source[*].field)
struct VoteStmt {
  std::string name;
  std::string source;
  std::string field;
  bool operator==(const VoteStmt&) const = default;
};

struct IfStmt {
  std::string lhs;
  CmpOp op = CmpOp::eq;
  Expr rhs;
  std::vector<Statement> then_body;
  std::vector<Statement> else_body;
  bool has_else = false;
  bool operator==(const IfStmt&) const;
};

/// RETURN answer=expr[, field=expr]*
struct ReturnStmt {
  std::vector<std::pair<std::string, Expr>> fields;
  bool operator==(const ReturnStmt&) const = default;
};

using StatementNode =
    std::variant<LetStmt, PromptStmt, CallStmt, ExtractFieldStmt, ExtractMatchStmt, VoteStmt, IfStmt, ReturnStmt>;

struct Statement {
  LineSpan span;
  StatementNode node;

  /// Structural equality; source positions are ignored.
  bool operator==(const Statement& other) const { return node == other.node; }
};

inline bool IfStmt::operator==(const IfStmt& o) const {
  return lhs == o.lhs && op == o.op && rhs == o.rhs && then_body == o.then_body && else_body == o.else_body &&
         has_else == o.has_else;
}

struct ProgramAST {
  std::vector<Statement> statements;

  /// Pre-order list of (statement, span) pairs, nested statements included.
  std::vector<std::pair<const Statement*, LineSpan>> line_map() const;

  bool operator==(const ProgramAST&) const = default;
};

const char* to_string(CmpOp op);

/// Counts statements of each kind, nested ones included.
struct StatementCounts {
  int let = 0, prompt = 0, call = 0, extract = 0, vote = 0, if_ = 0, ret = 0;
};
StatementCounts count_statements(const ProgramAST& ast);

}  // namespace polaris::policylang
