#pragma once

#include <string>

#include "mncx/moduli.hpp"

namespace mncx {

// Standalone SVG plot of a modulus curve: numeric estimates as a solid
// polyline with point markers, the analytic curve (when present) dashed,
// plus axes, ticks and a legend.
std::string curve_to_svg(const ModulusCurve& curve);

}  // namespace mncx
