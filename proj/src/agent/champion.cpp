#include "polaris/agent/champion.hpp"

namespace polaris::agent {

Champion Champion::first(int iteration, int policy_version, double score) {
  return Champion{policy_version, iteration, score, {{iteration, score, score}}};
}

Champion update_champion(Champion champion, int iteration, int candidate_version, double candidate_score) {
  if (champion.history.empty() || candidate_score > champion.validation_score) {
    champion.policy_version = candidate_version;
    champion.iteration = iteration;
    champion.validation_score = candidate_score;
  }
  champion.history.push_back({iteration, candidate_score, champion.validation_score});
  return champion;
}

Json to_json(const Champion& c) {
  Json h = Json::array();
  for (const auto& p : c.history) h.push_back({p.iteration, p.candidate_score, p.champion_score});
  return Json{{"policy_version", c.policy_version},
              {"iteration", c.iteration},
              {"validation_score", c.validation_score},
              {"history", h}};
}

}  // namespace polaris::agent
