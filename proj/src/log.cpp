#include "fineval/log.hpp"

#include <iostream>
#include <mutex>

namespace fineval::log {

namespace {

const char* level_name(Level level) {
  switch (level) {
    case Level::debug: return "DEBUG";
    case Level::info: return "INFO";
    case Level::warn: return "WARN";
    case Level::error: return "ERROR";
  }
  return "?";
}

std::mutex g_mutex;
Level g_min_level = Level::info;

Sink g_sink = [](Level level, const std::string& module, const std::string& message) {
  std::cerr << level_name(level) << " " << module << ": " << message << "\n";
};

}  // namespace

Sink set_sink(Sink sink) {
  std::lock_guard lock(g_mutex);
  Sink previous = std::move(g_sink);
  g_sink = std::move(sink);
  return previous;
}

void set_min_level(Level level) {
  std::lock_guard lock(g_mutex);
  g_min_level = level;
}

void emit(Level level, const std::string& module, const std::string& message) {
  std::lock_guard lock(g_mutex);
  if (static_cast<int>(level) < static_cast<int>(g_min_level)) return;
  if (g_sink) g_sink(level, module, message);
}

}  // namespace fineval::log
