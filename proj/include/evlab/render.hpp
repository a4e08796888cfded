#pragma once

#include <string>

#include "evlab/config.hpp"

namespace evlab {

struct RenderOptions {
  bool highlight_rect = false;
  double cell = 0.0;  // pixels per site; 0 picks a size that fits ~480 px
};

/// SVG drawing of the staircase path from (0, T_1) to (R_N, 0), labelled with its
/// area; optionally shades the largest inscribed rectangle. The ground state
/// yields an empty diagram with an annotation.
std::string render_staircase_svg(const Configuration& s, const RenderOptions& options = {});

}  // namespace evlab
