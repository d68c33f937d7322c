#pragma once

namespace spnet {

// artifact version, echoed in every serialized report
inline constexpr const char* version_string = "0.1.0";

}  // namespace spnet
