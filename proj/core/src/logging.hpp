#pragma once

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace expertquest::detail {

/// Library logger; writes to stderr so command output stays clean.
inline std::shared_ptr<spdlog::logger> logger() {
  static const auto instance = [] {
    if (auto existing = spdlog::get("expertquest")) return existing;
    return spdlog::stderr_color_mt("expertquest");
  }();
  return instance;
}

}  // namespace expertquest::detail
