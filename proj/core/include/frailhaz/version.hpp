#pragma once

namespace frailhaz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace frailhaz
