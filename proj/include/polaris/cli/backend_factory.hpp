#pragma once

#include <memory>

#include "polaris/core/clock.hpp"
#include "polaris/core/config.hpp"
#include "polaris/llm/backend.hpp"

namespace polaris::cli {

/// Scripted oracle or chat-completions client, as configured. The http
/// client reads its key from POLARIS_API_KEY.
std::unique_ptr<llm::Backend> make_backend(const RunConfig& config);
std::unique_ptr<Clock> make_clock(const RunConfig& config);

}  // namespace polaris::cli
