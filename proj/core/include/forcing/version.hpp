#pragma once

namespace forcing {

inline constexpr const char* kToolName = "forcing";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace forcing
