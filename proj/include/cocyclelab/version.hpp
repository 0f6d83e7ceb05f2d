#pragma once

namespace cocyclelab {

inline constexpr const char* kToolName = "cocyclelab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cocyclelab
