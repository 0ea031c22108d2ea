#pragma once

#include <string>
#include <vector>

#include "polaris/core/ledger.hpp"
#include "polaris/core/types.hpp"

namespace polaris {

/// What the agent sees of itself: active policy, goal, a configuration
/// digest and the bounded ledger window.
struct AgentState {
  PolicyVersion policy;
  std::string goal;
  std::string config_summary;
  std::vector<MemoryEntry> ledger_window;
};

Json to_json(const AgentState& s);

}  // namespace polaris
