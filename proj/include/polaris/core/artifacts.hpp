#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace polaris {

/// Writer for one run directory (runs/<run_id>/...). Paths are relative to
/// the run root; parent directories are created on demand.
class ArtifactStore {
 public:
  explicit ArtifactStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path path(std::string_view relative) const;

  void write(std::string_view relative, std::string_view content) const;
  void append(std::string_view relative, std::string_view content) const;
  bool exists(std::string_view relative) const;

 private:
  std::filesystem::path root_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace polaris
