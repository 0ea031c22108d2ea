#pragma once

#include <vector>

#include "polaris/core/types.hpp"

namespace polaris::agent {

struct ChampionPoint {
  int iteration = 0;
  double candidate_score = 0.0;
  double champion_score = 0.0;
};

/// Best-so-far policy on the validation split.
struct Champion {
  int policy_version = 0;
  int iteration = 0;
  double validation_score = 0.0;
  std::vector<ChampionPoint> history;

  /// First candidate becomes the champion.
  static Champion first(int iteration, int policy_version, double score);
};

/// Replaces the champion iff candidate_score is strictly higher; the history
/// grows either way.
Champion update_champion(Champion champion, int iteration, int candidate_version, double candidate_score);

Json to_json(const Champion& c);

}  // namespace polaris::agent
