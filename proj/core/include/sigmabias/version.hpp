#pragma once

namespace sigmabias {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace sigmabias
