#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polaris/core/clock.hpp"
#include "polaris/core/types.hpp"

namespace polaris {

enum class EntryKind { action, feedback, reflection, strategy, patch_outcome, policy_update };

std::string to_string(EntryKind k);
EntryKind entry_kind_from_string(std::string_view s);

struct MemoryEntry {
  EntryKind kind = EntryKind::action;
  Json payload = Json::object();
  int iteration = 0;
  std::string timestamp;
};

Json to_json(const MemoryEntry& e);
MemoryEntry memory_entry_from_json(const Json& j);

/// Append-only record of everything the agent did. The full history is kept
/// (and mirrored line by line to memory.log when a path is given); only
/// context_window() is meant to reach a backend prompt.
///
/// Single writer: callers serialize append().
class MemoryLedger {
 public:
  MemoryLedger() = default;
  /// Appends are mirrored to `log_path` as NDJSON. An existing file is truncated.
  explicit MemoryLedger(const std::filesystem::path& log_path);

  MemoryLedger(MemoryLedger&&) = default;
  MemoryLedger& operator=(MemoryLedger&&) = default;

  /// Throws LedgerOrderError when entry.iteration is below the last entry's.
  void append(MemoryEntry entry);

  /// The most recent min(k, size()) entries, oldest first. k == 0 throws ParameterError.
  std::vector<MemoryEntry> context_window(std::size_t k) const;

  const std::vector<MemoryEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Reads a persisted memory.log. Throws IoError on malformed lines.
  static std::vector<MemoryEntry> load(const std::filesystem::path& log_path);

 private:
  std::vector<MemoryEntry> entries_;
  std::optional<std::ofstream> sink_;
};

/// Convenience wrapper that stamps entries with the current iteration and
/// clock time.
class Recorder {
 public:
  Recorder(MemoryLedger& ledger, Clock& clock) : ledger_(ledger), clock_(clock) {}

  void set_iteration(int iteration) { iteration_ = iteration; }
  int iteration() const { return iteration_; }

  void record(EntryKind kind, Json payload);

  MemoryLedger& ledger() { return ledger_; }
  Clock& clock() { return clock_; }

 private:
  MemoryLedger& ledger_;
  Clock& clock_;
  int iteration_ = 0;
};

}  // namespace polaris
