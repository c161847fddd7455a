#pragma once

namespace eoqsub {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kToolName = "eoqsub";

}  // namespace eoqsub
