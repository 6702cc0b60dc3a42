#include "fulldisp/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace fulldisp {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("FULLDISP_LOG");
    if (env == nullptr) return LogLevel::Error;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

void log_message(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  const char* tag = level == LogLevel::Error
                        ? "error"
                        : (level == LogLevel::Info ? "info" : "debug");
  std::fprintf(stderr, "[fulldisp %s] %s\n", tag, message.c_str());
}

}  // namespace fulldisp
