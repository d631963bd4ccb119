#pragma once

#include <string>

#include "trunkkit/morse.hpp"

namespace trunkkit::render {

// Level-by-level diagram, top of the knot first.  Strand tracks are two
// columns apart; each regular level is annotated once with its strand count
// and the last line carries trunk and width.  Byte-deterministic.
std::string render_ascii(const morse::MorsePresentation& p);

// Same diagram as SVG: 40 units per strand track, 30 per level row.
std::string render_svg(const morse::MorsePresentation& p);

} // namespace trunkkit::render
