#pragma once

namespace pzeta {

inline constexpr const char* version = "0.1.0";

}
