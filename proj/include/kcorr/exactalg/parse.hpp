#pragma once

#include <string_view>

#include "kcorr/exactalg/poly.hpp"

namespace kcorr {

/// Parse a polynomial literal such as "x^2*y - 3/2*y + 1" or "2x(y+1)".
///
/// Identifiers may contain '.' and '#' after the first character, so product
/// variables like "A1.x" parse as single names. line/column locate text inside
/// a larger source for error messages.
Poly parse_poly(std::string_view text, const RingPtr& ring, int line = 1, int column = 1);

/// True for characters allowed to start / continue an identifier.
bool ident_start(char c);
bool ident_char(char c);

}  // namespace kcorr
