#pragma once

namespace dislox {

inline constexpr const char* kDisloxVersion = "0.1.0";

} // namespace dislox
