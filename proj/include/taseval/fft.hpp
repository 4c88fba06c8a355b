#pragma once

#include <complex>
#include <vector>

#include "taseval/image.hpp"

namespace taseval {

/// Row-major complex plane used for frequency-domain work.
struct ComplexImage {
  int width = 0;
  int height = 0;
  std::vector<std::complex<double>> data;

  ComplexImage() = default;
  ComplexImage(int w, int h)
      : width(w), height(h), data(static_cast<size_t>(w) * h) {}

  std::complex<double>& at(int x, int y) {
    return data[static_cast<size_t>(y) * width + x];
  }
  const std::complex<double>& at(int x, int y) const {
    return data[static_cast<size_t>(y) * width + x];
  }
};

/// Forward 2-D DFT of a grayscale image. Exact for any rectangular size.
ComplexImage fft2(const RasterImage& img);

/// Inverse 2-D DFT (normalized by 1/N); returns the real part as GRAY.
RasterImage ifft2(const ComplexImage& plane);

ComplexImage fft2_complex(const ComplexImage& in);
ComplexImage ifft2_complex(const ComplexImage& in);

/// In-place inverse transform; avoids the copy when the caller owns a
/// scratch plane.
void ifft2_complex_inplace(ComplexImage& plane);

}  // namespace taseval
