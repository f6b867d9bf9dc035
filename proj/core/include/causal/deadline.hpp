#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "causal/errors.hpp"

namespace causal {

// Optional wall-clock budget for long-running computations. Loops call
// tick() once per unit of work; the clock is read every 4096 ticks.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline none() { return Deadline{}; }
  static Deadline after(std::chrono::duration<double> budget) {
    Deadline d;
    d.until_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(budget);
    return d;
  }

  bool unlimited() const noexcept { return !until_.has_value(); }
  bool expired() const { return until_ && Clock::now() > *until_; }

  void tick(const char* what) {
    if (!until_ || (++ticks_ & 0xFFF) != 0) return;
    if (Clock::now() > *until_) throw TimeoutError(std::string(what) + ": time budget exceeded");
  }

 private:
  std::optional<Clock::time_point> until_;
  std::uint64_t ticks_ = 0;
};

}  // namespace causal
