#pragma once

#include "taseval/image.hpp"

namespace taseval {

/// Fast-marching (Telea-style) inpainting: masked pixels are filled from
/// the boundary inward, each as a distance/direction/level weighted average
/// of known neighbors with a first-order gradient term.
RasterImage inpaint_fast_marching(const RasterImage& img,
                                  const RasterImage& mask, int radius = 4);

/// Binary dilation with a square structuring element of the given radius.
RasterImage dilate(const RasterImage& mask, int radius);

/// Binary erosion, square element.
RasterImage erode(const RasterImage& mask, int radius);

}  // namespace taseval
