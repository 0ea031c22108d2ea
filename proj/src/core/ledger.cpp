#include "polaris/core/ledger.hpp"

#include <algorithm>

#include "polaris/core/error.hpp"

namespace polaris {

namespace {

constexpr std::pair<EntryKind, const char*> kKindNames[] = {
    {EntryKind::action, "action"},
    {EntryKind::feedback, "feedback"},
    {EntryKind::reflection, "reflection"},
    {EntryKind::strategy, "strategy"},
    {EntryKind::patch_outcome, "patch_outcome"},
    {EntryKind::policy_update, "policy_update"},
};

}  // namespace

std::string to_string(EntryKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "action";
}

EntryKind entry_kind_from_string(std::string_view s) {
  for (const auto& [kind, name] : kKindNames) {
    if (s == name) return kind;
  }
  throw IoError("unknown memory entry kind '" + std::string(s) + "'");
}

Json to_json(const MemoryEntry& e) {
  return Json{{"kind", to_string(e.kind)},
              {"iteration", e.iteration},
              {"timestamp", e.timestamp},
              {"payload", e.payload}};
}

MemoryEntry memory_entry_from_json(const Json& j) {
  MemoryEntry e;
  e.kind = entry_kind_from_string(j.at("kind").get<std::string>());
  e.iteration = j.at("iteration").get<int>();
  e.timestamp = j.at("timestamp").get<std::string>();
  e.payload = j.at("payload");
  return e;
}

MemoryLedger::MemoryLedger(const std::filesystem::path& log_path) {
  if (log_path.has_parent_path()) std::filesystem::create_directories(log_path.parent_path());
  sink_.emplace(log_path, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!*sink_) throw IoError("cannot open ledger file " + log_path.string());
}

void MemoryLedger::append(MemoryEntry entry) {
  if (!entries_.empty() && entry.iteration < entries_.back().iteration) {
    throw LedgerOrderError("ledger append out of order: iteration " + std::to_string(entry.iteration) +
                           " after " + std::to_string(entries_.back().iteration));
  }
  if (sink_) {
    *sink_ << to_json(entry).dump() << '\n';
    sink_->flush();
  }
  entries_.push_back(std::move(entry));
}

std::vector<MemoryEntry> MemoryLedger::context_window(std::size_t k) const {
  if (k == 0) throw ParameterError("context window size must be >= 1");
  const std::size_t n = std::min(k, entries_.size());
  return {entries_.end() - static_cast<std::ptrdiff_t>(n), entries_.end()};
}

std::vector<MemoryEntry> MemoryLedger::load(const std::filesystem::path& log_path) {
  std::ifstream in(log_path, std::ios::binary);
  if (!in) throw IoError("cannot read ledger file " + log_path.string());
  std::vector<MemoryEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(memory_entry_from_json(Json::parse(line)));
    } catch (const std::exception& e) {
      throw IoError(log_path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void Recorder::record(EntryKind kind, Json payload) {
  MemoryEntry e;
  e.kind = kind;
  e.payload = std::move(payload);
  e.iteration = iteration_;
  e.timestamp = clock_.now();
  ledger_.append(std::move(e));
}

}  // namespace polaris
