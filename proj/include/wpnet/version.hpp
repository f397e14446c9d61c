#pragma once

namespace wpnet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wpnet
