#pragma once

#include <string>
#include <string_view>

#include "tightcore/poly.hpp"

namespace tightcore {

/// Canonical coefficient text: an integer in [0, p) for prime-field elements,
/// otherwise a polynomial in the extension generator `a`, parenthesized
/// when it has more than one term (e.g. `a^7` or `(a^3+a+1)`).
std::string format_scalar(const Field& k, Scalar c);

/// Canonical polynomial text, terms descending: `3*x^2*y + a^4*z + 1`; zero prints as `0`.
std::string format_poly(const Poly& f);

/// Parses the canonical syntax (and general +, -, *, ^, parentheses).
/// Identifiers resolve to ring variables, then field parameters, then the
/// extension generator `a`. Throws ParseError with a 1-based column.
Poly parse_poly(const PolyRingPtr& ring, std::string_view text);

}  // namespace tightcore
