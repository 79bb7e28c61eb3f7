#pragma once

namespace symq {
inline constexpr const char* kVersion = "0.1.0";
}
