// Minimal stderr logging gated by the VQCLAB_LOG environment variable:
// quiet, warn, info (default) or debug.
#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace vqclab {

enum class LogLevel { Quiet = 0, Warn = 1, Info = 2, Debug = 3 };

inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("VQCLAB_LOG");
        if (!env) return LogLevel::Info;
        const std::string v(env);
        if (v == "quiet") return LogLevel::Quiet;
        if (v == "warn") return LogLevel::Warn;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Info;
    }();
    return level;
}

inline void log_at(LogLevel lvl, const char* tag, const std::string& msg) {
    if (log_level() >= lvl) {
        std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
    }
}

inline void log_warn(const std::string& msg) {
    log_at(LogLevel::Warn, "warn", msg);
}
inline void log_info(const std::string& msg) {
    log_at(LogLevel::Info, "info", msg);
}
inline void log_debug(const std::string& msg) {
    log_at(LogLevel::Debug, "debug", msg);
}

} // namespace vqclab
