#pragma once

#include <string>

#include "nrange/numrange.hpp"

namespace nrange {

/// 800x800 figure of a report, axes spanning +-1.1 ||A||: the circle |z| = ||A||
/// dashed, W outlined, W0 filled, peripheral eigenvalues as markers and the
/// boundary chords in bold. Output depends only on the report.
std::string render_svg(const RangeReport& r);

}  // namespace nrange
