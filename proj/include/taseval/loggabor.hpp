#pragma once

#include <vector>

#include "taseval/fft.hpp"

namespace taseval {

/// Bank of log-Gabor transfer functions, unshifted frequency layout
/// (DC at bin 0,0). Planes are indexed [scale * orientations + orientation].
struct FilterBank {
  int width = 0;
  int height = 0;
  int scales = 0;
  int orientations = 0;
  std::vector<ComplexImage> planes;

  const ComplexImage& plane(int scale, int orientation) const {
    return planes[static_cast<size_t>(scale) * orientations + orientation];
  }
};

struct LogGaborParams {
  int scales = 4;
  int orientations = 4;
  double min_wavelength = 6.0;
  double mult = 2.0;
  double sigma_on_f = 0.55;
  double d_theta_on_sigma = 1.2;
};

/// Radial log-Gaussian exp(-(log(f/f0))^2 / (2 log(sigmaOnf)^2)) times an
/// angular Gaussian of width (pi/orientations)/dThetaOnSigma. DC bin is 0.
FilterBank log_gabor_bank(int w, int h, const LogGaborParams& p);

}  // namespace taseval
