#pragma once

namespace ifs {
inline constexpr const char* kVersion = "0.1.0";
}
