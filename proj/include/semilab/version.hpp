#pragma once

namespace semilab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace semilab
