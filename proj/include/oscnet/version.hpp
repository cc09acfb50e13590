#pragma once

namespace oscnet {

inline constexpr const char* version = "0.1.0";

}
