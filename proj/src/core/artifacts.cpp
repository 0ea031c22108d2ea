#include "polaris/core/artifacts.hpp"

#include <fstream>
#include <sstream>

#include "polaris/core/error.hpp"

namespace polaris {

ArtifactStore::ArtifactStore(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
}

std::filesystem::path ArtifactStore::path(std::string_view relative) const { return root_ / relative; }

void ArtifactStore::write(std::string_view relative, std::string_view content) const {
  write_file(path(relative), content);
}

void ArtifactStore::append(std::string_view relative, std::string_view content) const {
  const auto p = path(relative);
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot append to " + p.string());
  out << content;
}

bool ArtifactStore::exists(std::string_view relative) const { return std::filesystem::exists(path(relative)); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
}

}  // namespace polaris
