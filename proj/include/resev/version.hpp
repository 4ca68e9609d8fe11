#pragma once

namespace resev {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace resev
