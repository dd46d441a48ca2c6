#pragma once

namespace ahnn {
inline constexpr const char* kVersion = "0.1.0";
}
