#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "polaris/core/error.hpp"
#include "polaris/core/types.hpp"

namespace polaris::eval {

enum class Split { validation, test };
std::string to_string(Split s);

struct Dataset {
  std::string name;
  Split split = Split::validation;
  std::vector<TaskInstance> instances;
  Metric metric = Metric::accuracy_ci;

  std::size_t size() const { return instances.size(); }
};

/// Malformed dataset file. A ConfigError: bad inputs stop a run before it starts.
class DatasetError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// NDJSON records {id, input, target, metadata?}; instances keep file order.
/// Errors name the offending line. Under preference_accuracy every target
/// must be "A" or "B".
Dataset load_dataset(const std::filesystem::path& path, Metric metric, Split split);
Dataset parse_dataset(std::string_view ndjson, const std::string& name, Metric metric, Split split);

}  // namespace polaris::eval
