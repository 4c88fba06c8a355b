#pragma once

#include <vector>

#include "taseval/image.hpp"

namespace taseval {

/// 1-D Gaussian kernel of radius ceil(3*sigma), normalized to sum 1.
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian blur, clamp-to-edge.
RasterImage gaussian_blur(const RasterImage& img, double sigma);

}  // namespace taseval
