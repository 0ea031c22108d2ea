#include "polaris/policylang/validator.hpp"

#include "polaris/policylang/parser.hpp"

namespace polaris::policylang {

std::vector<Json> StubCallHandler::call(const CallSpec& spec) {
  ++calls_;
  Json rec{{"reasoning", "probe"}, {"answer", "0"}};
  for (const auto& field : spec.require) {
    if (!rec.contains(field)) rec[field] = "0";
  }
  return std::vector<Json>(static_cast<std::size_t>(spec.n), rec);
}

Json to_json(const ValidationReport& r) {
  Json diags = Json::array();
  for (const auto& d : r.diagnostics) diags.push_back(Json{{"line", d.line}, {"message", d.message}});
  return Json{{"syntactic_ok", r.syntactic_ok}, {"executable_ok", r.executable_ok}, {"diagnostics", diags}};
}

ValidationReport validate(std::string_view source) {
  StubCallHandler stub;
  return validate(source, stub);
}

ValidationReport validate(std::string_view source, CallHandler& stub) {
  ValidationReport report;
  ParseResult parsed = try_parse(source);
  if (!parsed.ok()) {
    report.diagnostics = std::move(parsed.diagnostics);
    return report;
  }
  report.syntactic_ok = true;
  try {
    const SolverOutput out = execute(*parsed.ast, kProbeInput, stub);
    (void)out;
    report.executable_ok = true;
  } catch (const ExecutionError& e) {
    report.diagnostics.push_back({e.line(), "dry run: " + e.detail()});
  } catch (const std::exception& e) {
    report.diagnostics.push_back({0, std::string("dry run: ") + e.what()});
  }
  return report;
}

}  // namespace polaris::policylang
