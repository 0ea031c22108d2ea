#include "polaris/policylang/interpreter.hpp"

#include <regex>
#include <stdexcept>
#include <unordered_map>
#include <variant>

#include "polaris/core/text.hpp"
#include "polaris/policylang/lexer.hpp"
#include "polaris/policylang/parser.hpp"

namespace polaris::policylang {

namespace {

using Responses = std::vector<Json>;
using Value = std::variant<std::string, Responses>;

std::string json_to_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return text::canonical_number(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

bool compare(const std::string& lhs, CmpOp op, const std::string& rhs) {
  const auto a = text::parse_number(lhs);
  const auto b = text::parse_number(rhs);
  int c = 0;
  if (a && b) {
    c = *a < *b ? -1 : (*a > *b ? 1 : 0);
  } else {
    c = lhs.compare(rhs);
    c = c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  switch (op) {
    case CmpOp::eq: return c == 0;
    case CmpOp::ne: return c != 0;
    case CmpOp::lt: return c < 0;
    case CmpOp::le: return c <= 0;
    case CmpOp::gt: return c > 0;
    case CmpOp::ge: return c >= 0;
  }
  return false;
}

struct ReturnSignal {};

class Machine {
 public:
  Machine(std::string_view task_input, CallHandler& handler) : handler_(handler) {
    vars_[std::string(kTaskInput)] = std::string(task_input);
  }

  SolverOutput run(const ProgramAST& ast) {
    try {
      exec_block(ast.statements);
    } catch (const ReturnSignal&) {
      out_.trace = std::move(trace_);
      return std::move(out_);
    }
    fail(0, "program finished without RETURN");
  }

 private:
  [[noreturn]] void fail(int line, const std::string& message) { throw ExecutionError(line, message, trace_); }

  const std::string& text_var(const std::string& name, int line) {
    auto it = vars_.find(name);
    if (it == vars_.end()) fail(line, "undefined identifier '" + name + "'");
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    fail(line, "'" + name + "' is a CALL result, expected text");
  }

  const Responses& responses_var(const std::string& name, int line) {
    auto it = vars_.find(name);
    if (it == vars_.end()) fail(line, "undefined identifier '" + name + "'");
    if (const auto* r = std::get_if<Responses>(&it->second)) return *r;
    fail(line, "'" + name + "' is text, expected a CALL result");
  }

  std::string eval(const Expr& e, int line) {
    if (e.kind == Expr::Kind::identifier) return text_var(e.text, line);
    return e.text;
  }

  std::map<std::string, std::string> text_vars() const {
    std::map<std::string, std::string> out;
    for (const auto& [name, value] : vars_) {
      if (const auto* s = std::get_if<std::string>(&value)) out.emplace(name, *s);
    }
    return out;
  }

  void exec_block(const std::vector<Statement>& stmts) {
    for (const auto& stmt : stmts) exec(stmt);
  }

  void exec(const Statement& stmt) {
    const int line = stmt.span.first;
    out_.steps.push_back(line);
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, LetStmt>) {
            vars_[s.name] = s.value.text;
          } else if constexpr (std::is_same_v<T, PromptStmt>) {
            std::string tmpl;
            for (std::size_t i = 0; i < s.lines.size(); ++i) {
              if (i) tmpl += "\n";
              tmpl += s.lines[i];
            }
            try {
              vars_[s.name] = render_template(tmpl, text_vars());
            } catch (const std::out_of_range& e) {
              fail(line, e.what());
            }
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            exec_call(s, line);
          } else if constexpr (std::is_same_v<T, ExtractFieldStmt>) {
            const Responses& r = responses_var(s.source, line);
            if (s.index < 0 || static_cast<std::size_t>(s.index) >= r.size()) {
              fail(line, "index " + std::to_string(s.index) + " out of range: '" + s.source + "' holds " +
                             std::to_string(r.size()) + " response(s)");
            }
            const Json& rec = r[static_cast<std::size_t>(s.index)];
            if (!rec.is_object() || !rec.contains(s.field)) {
              fail(line, "response " + std::to_string(s.index) + " of '" + s.source + "' has no field '" + s.field +
                             "'");
            }
            vars_[s.name] = json_to_text(rec.at(s.field));
          } else if constexpr (std::is_same_v<T, ExtractMatchStmt>) {
            const std::string subject = text_var(s.source, line);
            const std::regex re(s.pattern, std::regex::extended);
            std::smatch m;
            std::string value;
            if (std::regex_search(subject, m, re)) {
              value = (m.size() > 1 && m[1].matched) ? m[1].str() : m[0].str();
            }
            vars_[s.name] = value;
          } else if constexpr (std::is_same_v<T, VoteStmt>) {
            const Responses& r = responses_var(s.source, line);
            std::vector<std::string> values;
            for (const auto& rec : r) {
              if (rec.is_object() && rec.contains(s.field)) values.push_back(text::trim(json_to_text(rec.at(s.field))));
            }
            if (values.empty()) fail(line, "no response of '" + s.source + "' has field '" + s.field + "'");
            vars_[s.name] = majority_vote(values);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            const std::string lhs = text_var(s.lhs, line);
            if (compare(lhs, s.op, s.rhs.text)) {
              exec_block(s.then_body);
            } else {
              exec_block(s.else_body);
            }
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            bool has_reasoning = false;
            for (const auto& [field, expr] : s.fields) {
              const std::string v = eval(expr, line);
              if (field == "answer") {
                out_.answer = v;
              } else if (field == "reasoning") {
                out_.reasoning = v;
                has_reasoning = true;
              } else {
                out_.extras[field] = v;
              }
            }
            if (!has_reasoning) out_.reasoning = last_reasoning_;
            throw ReturnSignal{};
          }
        },
        stmt.node);
  }

  void exec_call(const CallStmt& s, int line) {
    CallSpec spec;
    spec.variable = s.name;
    spec.role = s.role;
    spec.temperature = s.temperature;
    spec.n = s.n;
    spec.prompt = text_var(s.prompt, line);
    spec.require = s.require;
    spec.line = line;
    Responses responses;
    try {
      responses = handler_.call(spec);
    } catch (const CallFailure& e) {
      fail(line, std::string("backend call failed: ") + e.what());
    }
    if (responses.size() != static_cast<std::size_t>(s.n)) {
      fail(line, "backend returned " + std::to_string(responses.size()) + " response(s), expected " +
                     std::to_string(s.n));
    }
    trace_.push_back(TraceEntry{line, s.name, s.role, s.n, spec.prompt, responses});
    if (!responses.empty() && responses.front().is_object() && responses.front().contains("reasoning")) {
      last_reasoning_ = json_to_text(responses.front().at("reasoning"));
    }
    vars_[s.name] = std::move(responses);
  }

  CallHandler& handler_;
  std::unordered_map<std::string, Value> vars_;
  std::vector<TraceEntry> trace_;
  std::string last_reasoning_;
  SolverOutput out_;
};

}  // namespace

Json to_json(const TraceEntry& t) {
  return Json{{"line", t.line}, {"variable", t.variable}, {"role", t.role},
              {"n", t.n},       {"prompt", t.prompt},     {"responses", t.responses}};
}

ExecutionError::ExecutionError(int line, const std::string& message, std::vector<TraceEntry> trace)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line),
      detail_(message),
      trace_(std::move(trace)) {}

SolverOutput execute(const ProgramAST& ast, std::string_view task_input, CallHandler& handler) {
  return Machine(task_input, handler).run(ast);
}

std::string majority_vote(const std::vector<std::string>& values) {
  if (values.empty()) throw std::invalid_argument("majority_vote over no values");
  std::vector<std::pair<std::string, int>> counts;  // first-occurrence order
  for (const auto& v : values) {
    bool found = false;
    for (auto& [value, count] : counts) {
      if (value == v) {
        ++count;
        found = true;
        break;
      }
    }
    if (!found) counts.emplace_back(v, 1);
  }
  const auto* best = &counts.front();
  for (const auto& c : counts) {
    if (c.second > best->second) best = &c;
  }
  return best->first;
}

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const std::size_t close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        const std::string_view name = tmpl.substr(i + 1, close - i - 1);
        if (is_identifier(name)) {
          auto it = vars.find(std::string(name));
          if (it == vars.end()) throw std::out_of_range("unbound template variable '" + std::string(name) + "'");
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(tmpl[i]);
    ++i;
  }
  return out;
}

}  // namespace polaris::policylang
