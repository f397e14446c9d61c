#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace wpnet::log {

enum class Level { quiet = 0, error = 1, warn = 2, info = 3, debug = 4 };

/// Verbosity comes from the WPNET_LOG environment variable
/// (quiet|error|warn|info|debug); default is warn.
inline Level level() {
    static Level lv = [] {
        const char* e = std::getenv("WPNET_LOG");
        if (!e) return Level::warn;
        if (!std::strcmp(e, "quiet")) return Level::quiet;
        if (!std::strcmp(e, "error")) return Level::error;
        if (!std::strcmp(e, "warn")) return Level::warn;
        if (!std::strcmp(e, "info")) return Level::info;
        if (!std::strcmp(e, "debug")) return Level::debug;
        return Level::warn;
    }();
    return lv;
}

template <typename... Args>
void emit(Level lv, const char* tag, const char* fmt, Args... args) {
    if (level() < lv) return;
    std::fprintf(stderr, "[wpnet %s] ", tag);
    if constexpr (sizeof...(Args) == 0)
        std::fputs(fmt, stderr);
    else
        std::fprintf(stderr, fmt, args...);
    std::fputc('\n', stderr);
}

template <typename... Args>
void error(const char* fmt, Args... args) {
    emit(Level::error, "error", fmt, args...);
}
template <typename... Args>
void warn(const char* fmt, Args... args) {
    emit(Level::warn, "warn", fmt, args...);
}
template <typename... Args>
void info(const char* fmt, Args... args) {
    emit(Level::info, "info", fmt, args...);
}
template <typename... Args>
void debug(const char* fmt, Args... args) {
    emit(Level::debug, "debug", fmt, args...);
}

}  // namespace wpnet::log
