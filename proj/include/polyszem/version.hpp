#pragma once

namespace polyszem {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace polyszem
