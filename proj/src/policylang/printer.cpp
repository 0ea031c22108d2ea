#include "polaris/policylang/printer.hpp"

#include "polaris/core/text.hpp"
#include "polaris/policylang/lexer.hpp"

namespace polaris::policylang {

namespace {

std::string expr_source(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::identifier:
    case Expr::Kind::number: return e.text;
    case Expr::Kind::string: return quote(e.text);
  }
  return e.text;
}

void emit(const std::vector<Statement>& stmts, int depth, std::string& out) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& stmt : stmts) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, LetStmt>) {
            out += indent + "LET " + s.name + " = " + expr_source(s.value) + "\n";
          } else if constexpr (std::is_same_v<T, PromptStmt>) {
            out += indent + "PROMPT " + s.name + " <<<\n";
            for (const auto& l : s.lines) out += l + "\n";
            out += indent + ">>>\n";
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            out += indent + "CALL " + s.name + " = LLM(role=" + quote(s.role) +
                   ", temperature=" + text::canonical_number(s.temperature) + ", n=" + std::to_string(s.n) +
                   ", prompt=" + s.prompt + ", require=[";
            for (std::size_t i = 0; i < s.require.size(); ++i) {
              if (i) out += ", ";
              out += is_identifier(s.require[i]) ? s.require[i] : quote(s.require[i]);
            }
            out += "])\n";
          } else if constexpr (std::is_same_v<T, ExtractFieldStmt>) {
            out += indent + "EXTRACT " + s.name + " = " + s.source + "[" + std::to_string(s.index) + "]." + s.field +
                   "\n";
          } else if constexpr (std::is_same_v<T, ExtractMatchStmt>) {
            out += indent + "EXTRACT " + s.name + " = MATCH(" + s.source + ", " + quote(s.pattern) + ")\n";
          } else if constexpr (std::is_same_v<T, VoteStmt>) {
            out += indent + "VOTE " + s.name + " = MAJORITY(" + s.source + "[*]." + s.field + ")\n";
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            out += indent + "IF " + s.lhs + " " + to_string(s.op) + " " + expr_source(s.rhs) + " THEN\n";
            emit(s.then_body, depth + 1, out);
            if (s.has_else) {
              out += indent + "ELSE\n";
              emit(s.else_body, depth + 1, out);
            }
            out += indent + "END\n";
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            out += indent + "RETURN ";
            for (std::size_t i = 0; i < s.fields.size(); ++i) {
              if (i) out += ", ";
              out += s.fields[i].first + "=" + expr_source(s.fields[i].second);
            }
            out += "\n";
          }
        },
        stmt.node);
  }
}

}  // namespace

const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return "==";
    case CmpOp::ne: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
  }
  return "==";
}

std::vector<std::pair<const Statement*, LineSpan>> ProgramAST::line_map() const {
  std::vector<std::pair<const Statement*, LineSpan>> out;
  auto walk = [&out](const std::vector<Statement>& stmts, const auto& self) -> void {
    for (const auto& s : stmts) {
      out.emplace_back(&s, s.span);
      if (const auto* node = std::get_if<IfStmt>(&s.node)) {
        self(node->then_body, self);
        self(node->else_body, self);
      }
    }
  };
  walk(statements, walk);
  return out;
}

StatementCounts count_statements(const ProgramAST& ast) {
  StatementCounts c;
  for (const auto& [stmt, _] : ast.line_map()) {
    std::visit(
        [&c](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, LetStmt>) ++c.let;
          if constexpr (std::is_same_v<T, PromptStmt>) ++c.prompt;
          if constexpr (std::is_same_v<T, CallStmt>) ++c.call;
          if constexpr (std::is_same_v<T, ExtractFieldStmt> || std::is_same_v<T, ExtractMatchStmt>) ++c.extract;
          if constexpr (std::is_same_v<T, VoteStmt>) ++c.vote;
          if constexpr (std::is_same_v<T, IfStmt>) ++c.if_;
          if constexpr (std::is_same_v<T, ReturnStmt>) ++c.ret;
        },
        stmt->node);
  }
  return c;
}

std::string to_source(const ProgramAST& ast) {
  std::string out;
  emit(ast.statements, 0, out);
  return out;
}

}  // namespace polaris::policylang
