#pragma once

#include <functional>
#include <string>

namespace fineval::log {

enum class Level { debug, info, warn, error };

using Sink = std::function<void(Level, const std::string& module, const std::string& message)>;

// Replaces the process-wide sink; returns the previous one. The default sink
// writes "LEVEL module: message" lines to stderr. Tests install capturing sinks.
Sink set_sink(Sink sink);

void set_min_level(Level level);

void emit(Level level, const std::string& module, const std::string& message);

inline void debug(const std::string& module, const std::string& message) {
  emit(Level::debug, module, message);
}
inline void info(const std::string& module, const std::string& message) {
  emit(Level::info, module, message);
}
inline void warn(const std::string& module, const std::string& message) {
  emit(Level::warn, module, message);
}
inline void error(const std::string& module, const std::string& message) {
  emit(Level::error, module, message);
}

}  // namespace fineval::log
