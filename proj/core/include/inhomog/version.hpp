#pragma once

namespace inhomog {

inline constexpr const char* version = "0.1.0";

} // namespace inhomog
