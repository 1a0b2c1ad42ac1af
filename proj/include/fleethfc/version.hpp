#pragma once

namespace fleethfc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fleethfc
