#pragma once

namespace gapquant {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace gapquant
