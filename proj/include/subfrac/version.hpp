#pragma once

namespace subfrac {
inline constexpr const char* kVersion = "0.1.0";
}
