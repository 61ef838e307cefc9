#pragma once

#include <string>
#include <string_view>

#include "mncx/structured_set.hpp"

namespace mncx {

// Shortest decimal form that round-trips through double.
std::string format_double(double value);

// Canonical text form, e.g.
//   tail(center=[0.5, 0], r=0.5, start=3)
//   sphere(center=[], r=1, start=1)
//   ball(center=[], r=0.25, start=2)
//   finite([[1, 0], [0, 1]])
//   union(tail(center=[], r=1, start=1), finite([[0.5]]))
// Centers and finite points print as dense coefficient lists from index 1.
std::string to_text(const StructuredSet& s);

// Inverse of to_text; whitespace-insensitive. Throws ParseError with the
// offending byte position on malformed input.
StructuredSet parse_set(std::string_view text);

}  // namespace mncx
