#include "taseval/filter.hpp"

#include <cmath>

namespace taseval {

std::vector<double> gaussian_kernel(double sigma) {
  if (sigma <= 0.0) throw NonPositiveSigma("sigma must be > 0");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

RasterImage gaussian_blur(const RasterImage& img, double sigma) {
  const std::vector<double> k = gaussian_kernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);
  const int w = img.width(), h = img.height(), ch = img.channels();

  RasterImage tmp(w, h, ch, img.colorspace());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i)
          acc += k[i + radius] * img.at_clamped(x + i, y, c);
        tmp.at(x, y, c) = static_cast<float>(acc);
      }

  RasterImage out(w, h, ch, img.colorspace());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i)
          acc += k[i + radius] * tmp.at_clamped(x, y + i, c);
        out.at(x, y, c) = static_cast<float>(acc);
      }
  return out;
}

}  // namespace taseval
