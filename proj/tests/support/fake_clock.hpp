#pragma once

#include <mutex>
#include <vector>

#include "expertquest/live_sources.hpp"

namespace expertquest::testing {

/// Clock whose sleeps return immediately after advancing virtual time.
class FakeClock final : public sources::Clock {
 public:
  explicit FakeClock(time_point start = time_point(std::chrono::seconds(1'700'000'000)))
      : now_(start) {}

  time_point now() const override {
    std::lock_guard lock(mu_);
    return now_;
  }

  void sleep_until(time_point t) override {
    std::lock_guard lock(mu_);
    if (t > now_) {
      sleeps_.push_back(std::chrono::duration_cast<std::chrono::seconds>(t - now_));
      now_ = t;
    }
  }

  void advance(std::chrono::seconds d) {
    std::lock_guard lock(mu_);
    now_ += d;
  }

  std::vector<std::chrono::seconds> sleeps() const {
    std::lock_guard lock(mu_);
    return sleeps_;
  }

  std::int64_t epoch_seconds() const {
    return std::chrono::duration_cast<std::chrono::seconds>(now().time_since_epoch())
        .count();
  }

 private:
  mutable std::mutex mu_;
  time_point now_;
  std::vector<std::chrono::seconds> sleeps_;
};

}  // namespace expertquest::testing
