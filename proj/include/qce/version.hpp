#pragma once

namespace qce {

inline constexpr const char* kToolName = "qce";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qce
