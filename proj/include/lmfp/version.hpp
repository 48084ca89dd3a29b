#pragma once

namespace lmfp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lmfp
