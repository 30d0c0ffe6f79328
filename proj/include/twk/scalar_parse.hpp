#pragma once

#include "twk/ring.hpp"

namespace twk {

/// Parse an exact scalar literal in the given ring.  Accepted forms,
/// whitespace-insensitive:
///   rationals:    "3", "-7/2"
///   prime field:  "3", "3 mod 7"
///   Laurent:      "1 + 2*t^2 - 1/3*t^-1*u", "t^3", "-u"
/// Throws std::invalid_argument on malformed input or out-of-ring values.
Scalar parse_scalar(const std::string& text, const RingPtr& ring);

}  // namespace twk
