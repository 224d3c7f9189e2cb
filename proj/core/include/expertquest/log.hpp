#pragma once

namespace expertquest {

enum class LogLevel { Debug, Info, Warn, Error, Off };

/// Threshold for the library's stderr logger. Default is Info.
void set_log_level(LogLevel level);

}  // namespace expertquest
