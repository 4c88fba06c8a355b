#pragma once

#include "taseval/image.hpp"

namespace taseval {

/// Bilinear resize with half-pixel center alignment and edge clamping.
/// Resizing to the source size reproduces the input exactly.
RasterImage resize_bilinear(const RasterImage& img, int w, int h);

}  // namespace taseval
