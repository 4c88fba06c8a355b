#pragma once

#include "taseval/image.hpp"

namespace taseval {

/// sRGB transfer decode/encode for one component in [0,1].
double srgb_decode(double c);
double srgb_encode(double c);

/// BT.601 luma on gamma-encoded samples: Y = 0.299 R + 0.587 G + 0.114 B.
RasterImage to_grayscale(const RasterImage& img);

/// sRGB -> CIE Lab, D65 white point, 2-degree observer.
RasterImage srgb_to_lab(const RasterImage& img);
RasterImage lab_to_srgb(const RasterImage& img);

LabPixel srgb_pixel_to_lab(double r, double g, double b);
void lab_pixel_to_srgb(const LabPixel& lab, double* r, double* g, double* b);

}  // namespace taseval
