#pragma once

namespace polarconv {

inline constexpr const char* version_string = "0.1.0";
inline constexpr const char* report_header = "polarconv-report v1";

} // namespace polarconv
