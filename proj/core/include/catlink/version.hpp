#pragma once

namespace catlink {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace catlink
