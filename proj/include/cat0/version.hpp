#pragma once

namespace cat0 {

inline constexpr const char* kToolName = "cat0audit";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace cat0
