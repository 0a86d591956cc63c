#pragma once

namespace fpseed {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "fpseed";

} // namespace fpseed
