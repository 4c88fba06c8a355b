#pragma once

#include <optional>

#include "taseval/image.hpp"

namespace taseval {

struct Ciede2000Params {
  double kL = 1.0;
  double kC = 1.0;
  double kH = 1.0;
};

/// CIEDE2000 color difference, including the G-factor a' correction, the
/// hue rotation term R_T, and the S_L/S_C/S_H weighting functions.
double ciede2000(const LabPixel& p, const LabPixel& q,
                 const Ciede2000Params& k = {});

/// Arithmetic mean of per-pixel delta-E over mask-true pixels (all pixels
/// when the mask is absent). Mask pixels > 0.5 count as true.
double mean_image_ciede2000(const RasterImage& a, const RasterImage& b,
                            const RasterImage* mask = nullptr,
                            const Ciede2000Params& k = {});

/// s_clr = 1 - min(meanDeltaE / 50, 1) over two colorized glyph renders.
/// A mask restricts the mean to the glyph ink, where the color signal
/// lives; without it the mean runs over the full canvas.
double color_similarity(const RasterImage& ca, const RasterImage& cb,
                        const RasterImage* mask = nullptr);

}  // namespace taseval
