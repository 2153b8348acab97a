#pragma once

namespace simred {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace simred
