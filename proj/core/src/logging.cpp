#include "expertquest/log.hpp"

#include "logging.hpp"

namespace expertquest {

void set_log_level(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: detail::logger()->set_level(spdlog::level::debug); break;
    case LogLevel::Info: detail::logger()->set_level(spdlog::level::info); break;
    case LogLevel::Warn: detail::logger()->set_level(spdlog::level::warn); break;
    case LogLevel::Error: detail::logger()->set_level(spdlog::level::err); break;
    case LogLevel::Off: detail::logger()->set_level(spdlog::level::off); break;
  }
}

}  // namespace expertquest
