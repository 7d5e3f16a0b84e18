#pragma once

namespace tomolab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tomolab
