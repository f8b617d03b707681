#pragma once

namespace sphlkc {

inline constexpr const char* kVersion = "0.1.0";

}
