// Minimal leveled logging to stderr, controlled by FULLDISP_LOG
// (error | info | debug; default error).
#pragma once

#include <string>

namespace fulldisp {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level();
void log_message(LogLevel level, const std::string& message);

inline void log_error(const std::string& m) { log_message(LogLevel::Error, m); }
inline void log_info(const std::string& m) { log_message(LogLevel::Info, m); }
inline void log_debug(const std::string& m) { log_message(LogLevel::Debug, m); }

}  // namespace fulldisp
