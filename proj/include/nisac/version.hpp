#pragma once

namespace nisac {

inline constexpr const char* kVersion = "0.1.0";

// Identifier of the generator backing all randomness. Echoed in result
// metadata so emitted numbers can be tied to the substream derivation rule.
inline constexpr const char* kRngId = "splitmix64";

}  // namespace nisac
