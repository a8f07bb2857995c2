#pragma once

namespace subwick {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace subwick
