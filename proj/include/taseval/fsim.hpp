#pragma once

#include "taseval/image.hpp"

namespace taseval {

struct FsimParams {
  int scales = 4;
  int orientations = 4;
  double min_wavelength = 6.0;
  double mult = 2.0;
  double sigma_on_f = 0.55;
  double d_theta_on_sigma = 1.2;
  double noise_k = 2.0;  // noise threshold is mean + k sigma of the estimate
  double t1 = 0.85;      // phase congruency similarity constant
  double t2 = 160.0;     // gradient similarity constant, 8-bit units
};

/// Phase congruency map in [0,1]: log-Gabor energy over amplitude per
/// orientation with a median-based noise threshold, summed across
/// orientations and normalized by total amplitude (epsilon 1e-4).
RasterImage phase_congruency(const RasterImage& img, const FsimParams& p = {});

/// Scharr gradient magnitude. Samples are scaled to 0-255 before filtering
/// so t2 keeps its 8-bit calibration; the kernel is the [3 10 3]/16 form.
RasterImage gradient_magnitude(const RasterImage& img);

/// Feature similarity index: sum(S_PC * S_G * PCm) / sum(PCm) with
/// PCm = max(PC_a, PC_b). Result in [0,1].
double fsim(const RasterImage& a, const RasterImage& b,
            const FsimParams& p = {});

}  // namespace taseval
