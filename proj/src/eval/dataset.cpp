#include "polaris/eval/dataset.hpp"

#include <set>

#include "polaris/core/artifacts.hpp"
#include "polaris/core/text.hpp"

namespace polaris::eval {

std::string to_string(Split s) { return s == Split::validation ? "validation" : "test"; }

Dataset parse_dataset(std::string_view ndjson, const std::string& name, Metric metric, Split split) {
  Dataset ds{name, split, {}, metric};
  std::set<std::string> seen;
  int lineno = 0;
  for (const auto& line : text::split_lines(ndjson)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const std::string where = name + " line " + std::to_string(lineno);
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw DatasetError(where + ": not a JSON object");
    TaskInstance t;
    for (const char* field : {"id", "input", "target"}) {
      if (!j.contains(field)) throw DatasetError(where + ": missing field \"" + field + "\"");
      const Json& v = j[field];
      std::string s;
      if (v.is_string()) {
        s = v.get<std::string>();
      } else if (v.is_number()) {
        s = v.dump();
      } else {
        throw DatasetError(where + ": field \"" + field + "\" must be a string");
      }
      if (text::trim(s).empty()) throw DatasetError(where + ": field \"" + field + "\" is empty");
      if (std::string_view(field) == "id") t.id = s;
      if (std::string_view(field) == "input") t.input = s;
      if (std::string_view(field) == "target") t.target = s;
    }
    if (j.contains("metadata")) {
      if (!j["metadata"].is_object()) throw DatasetError(where + ": \"metadata\" must be an object");
      for (const auto& [k, v] : j["metadata"].items()) t.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    if (metric == Metric::preference_accuracy && t.target != "A" && t.target != "B") {
      throw DatasetError(where + ": preference targets must be \"A\" or \"B\"");
    }
    if (!seen.insert(t.id).second) throw DatasetError(where + ": duplicate id \"" + t.id + "\"");
    ds.instances.push_back(std::move(t));
  }
  if (ds.instances.empty()) throw DatasetError(name + ": dataset is empty");
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path, Metric metric, Split split) {
  if (!std::filesystem::is_regular_file(path)) throw DatasetError("dataset not found: " + path.string());
  return parse_dataset(read_file(path), path.string(), metric, split);
}

}  // namespace polaris::eval
