#pragma once

#include <string>

#include "rank1/ford.hpp"

namespace rank1 {

// 2D slice rendering of a region: one traced contour per sphere, the slab
// shaded, and a word legend.  Output bytes are deterministic for fixed input.
struct RenderOptions {
  // "dprime" (field R, n = 2 only): horizontal/vertical coordinates of the
  // right half-space chart.  Otherwise "<a>:<b>" picks two boundary
  // coordinates, with tokens v<k> (k-th real coordinate of V) and z<k>
  // (k-th imaginary coordinate of the scalar part).  "auto" chooses for you.
  std::string plane = "auto";
  double extent = 2.5;
  int resolution = 600;  // grid cells per axis, at most 8192
};

std::string render_svg(const FordRegion& region, const RenderOptions& opt);

}  // namespace rank1
