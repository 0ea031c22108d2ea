#pragma once

namespace polaris::agent {

/// Goal text g handed to the action-selecting model.
extern const char* const kGoalPrompt;
/// Appended to the goal: available actions and the reply format.
extern const char* const kActionSelectionSuffix;

}  // namespace polaris::agent
