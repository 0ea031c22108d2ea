#pragma once

#include <cstdint>
#include <mutex>
#include <string>

namespace polaris {

/// Source of informational timestamps. Ordering authority is always the
/// iteration counter, never the clock.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::string now() = 0;
};

/// UTC wall-clock time, ISO-8601 with millisecond precision.
class SystemClock final : public Clock {
 public:
  std::string now() override;
};

/// Deterministic clock: every call advances one second from the Unix epoch.
/// Scripted runs use it so that persisted artifacts are reproducible.
class LogicalClock final : public Clock {
 public:
  std::string now() override;
  std::uint64_t ticks() const;

 private:
  mutable std::mutex mu_;
  std::uint64_t ticks_ = 0;
};

}  // namespace polaris
