#pragma once

namespace plens {

inline constexpr const char* kToolName = "privacy-lens";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace plens
