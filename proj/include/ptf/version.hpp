#pragma once

namespace ptf {
inline constexpr const char* kVersion = "0.1.0";
}
