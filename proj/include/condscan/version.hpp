#pragma once

namespace condscan {

inline constexpr const char* kVersion = "condscan 1.0.0";

} // namespace condscan
