#pragma once

#include <vector>

#include "taseval/image.hpp"

namespace taseval {

struct SsimParams {
  double k1 = 0.01;
  double k2 = 0.03;
  double window_sigma = 1.5;
  int window_size = 11;
  double dynamic_range = 1.0;
};

/// Mean squared difference over all samples.
double mse(const RasterImage& a, const RasterImage& b);

/// 10*log10(R^2/MSE) with R = dynamic range 1.0. Identical images return
/// +infinity; aggregate layers cap the sentinel at 100 dB.
double psnr(const RasterImage& a, const RasterImage& b);

/// Mean local SSIM index with Gaussian-weighted moments, clamp-to-edge.
double ssim(const RasterImage& a, const RasterImage& b,
            const SsimParams& p = {});

/// Canonical five-level weights for ms_ssim.
const std::vector<double>& ms_ssim_default_weights();

/// Multi-scale SSIM: contrast-structure means per level raised to the level
/// weights, full SSIM at the coarsest level. When the resolution supports
/// fewer levels than weights, the weights are truncated and renormalized.
double ms_ssim(const RasterImage& a, const RasterImage& b,
               const SsimParams& p = {},
               const std::vector<double>& weights = ms_ssim_default_weights());

}  // namespace taseval
