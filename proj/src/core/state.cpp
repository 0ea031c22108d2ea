#include "polaris/core/state.hpp"

namespace polaris {

Json to_json(const AgentState& s) {
  Json window = Json::array();
  for (const auto& e : s.ledger_window) window.push_back(to_json(e));
  return Json{{"policy_version", s.policy.version},
              {"policy", s.policy.source},
              {"config", s.config_summary},
              {"ledger_window", window}};
}

}  // namespace polaris
