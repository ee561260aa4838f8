#pragma once

namespace graphhom {

inline constexpr const char* kVersion = "0.1.0";

} // namespace graphhom
