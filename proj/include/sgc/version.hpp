#pragma once

namespace sgc {
inline constexpr const char* kVersion = "1.0.0";
}
