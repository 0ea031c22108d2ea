#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "polaris/core/error.hpp"
#include "polaris/core/types.hpp"
#include "polaris/policylang/ast.hpp"

namespace polaris::policylang {

/// A resolved CALL statement, handed to the model backend.
struct CallSpec {
  std::string variable;
  std::string role;
  double temperature = 0.0;
  int n = 1;
  std::string prompt;
  std::vector<std::string> require;
  int line = 0;
};

/// Answers CALL statements. Implementations return exactly spec.n JSON
/// records. Recoverable per-call problems are reported by throwing
/// CallFailure; any other exception aborts execution unchanged.
class CallHandler {
 public:
  virtual ~CallHandler() = default;
  virtual std::vector<Json> call(const CallSpec& spec) = 0;
};

class CallFailure : public Error {
 public:
  using Error::Error;
};

struct TraceEntry {
  int line = 0;
  std::string variable;
  std::string role;
  int n = 1;
  std::string prompt;
  std::vector<Json> responses;
};

Json to_json(const TraceEntry& t);

struct SolverOutput {
  std::string answer;
  std::string reasoning;
  std::map<std::string, std::string> extras;
  /// One entry per backend call, in execution order.
  std::vector<TraceEntry> trace;
  /// Source line of every executed statement, in execution order.
  std::vector<int> steps;
};

/// Runtime failure; carries the trace accumulated before the failure.
class ExecutionError : public Error {
 public:
  ExecutionError(int line, const std::string& message, std::vector<TraceEntry> trace);
  int line() const { return line_; }
  /// Message without the line prefix.
  const std::string& detail() const { return detail_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  int line_;
  std::string detail_;
  std::vector<TraceEntry> trace_;
};

/// Runs a parsed program on one task input. Deterministic for a
/// deterministic handler.
SolverOutput execute(const ProgramAST& ast, std::string_view task_input, CallHandler& handler);

/// Majority vote; ties go to the value seen first.
std::string majority_vote(const std::vector<std::string>& values);

/// Renders {identifier} placeholders. Braces around anything that is not an
/// identifier are left alone. Throws std::out_of_range naming the first
/// unbound placeholder.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& vars);

}  // namespace polaris::policylang
