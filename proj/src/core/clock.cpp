#include "polaris/core/clock.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace polaris {

namespace {

std::string iso8601(std::time_t seconds, int millis) {
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, millis);
  return buf;
}

}  // namespace

std::string SystemClock::now() {
  const auto now = std::chrono::system_clock::now();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
  return iso8601(static_cast<std::time_t>(ms / 1000), static_cast<int>(ms % 1000));
}

std::string LogicalClock::now() {
  std::lock_guard lock(mu_);
  ++ticks_;
  return iso8601(static_cast<std::time_t>(ticks_), 0);
}

std::uint64_t LogicalClock::ticks() const {
  std::lock_guard lock(mu_);
  return ticks_;
}

}  // namespace polaris
