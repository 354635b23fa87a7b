#pragma once

// SVG figures of decompositions and cuttings. Curves are solid polylines,
// extra vertical walls are dashed segments, and output carries no timestamp,
// so equal inputs give identical documents.

#include <string>
#include <string_view>

#include "cutting_forge/cutting.hpp"
#include "cutting_forge/decomposition.hpp"

namespace cutting_forge {

struct Viewport {
  double x2min = -10;
  double x2max = 10;
  double x1min = -10;
  double x1max = 10;
};

/// Parses "x2min:x2max:x1min:x1max"; requires finite values with min < max.
Viewport parse_viewport(std::string_view text);

struct RenderOptions {
  Viewport viewport;
  bool shade_cells = false;
  int width = 800;
  int height = 600;
};

std::string render_svg(const CellComplex& complex, const RenderOptions& options);

/// Pieces outlined, each with its crossing count as tooltip text.
std::string render_svg(const Cutting& cutting, const RenderOptions& options);

}  // namespace cutting_forge
