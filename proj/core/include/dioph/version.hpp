#pragma once

namespace dioph {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dioph
