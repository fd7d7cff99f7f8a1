#pragma once

namespace dpplab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dpplab
