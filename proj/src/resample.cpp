#include "taseval/resample.hpp"

#include <cmath>

namespace taseval {

RasterImage resize_bilinear(const RasterImage& img, int w, int h) {
  if (w < 1 || h < 1) throw ZeroDimension("resize target must be >= 1x1");
  if (w == img.width() && h == img.height()) return img;

  RasterImage out(w, h, img.channels(), img.colorspace());
  const double sx = static_cast<double>(img.width()) / w;
  const double sy = static_cast<double>(img.height()) / h;

  for (int y = 0; y < h; ++y) {
    const double fy = (y + 0.5) * sy - 0.5;
    const int y0 = static_cast<int>(std::floor(fy));
    const double wy = fy - y0;
    for (int x = 0; x < w; ++x) {
      const double fx = (x + 0.5) * sx - 0.5;
      const int x0 = static_cast<int>(std::floor(fx));
      const double wx = fx - x0;
      for (int c = 0; c < img.channels(); ++c) {
        const double v00 = img.at_clamped(x0, y0, c);
        const double v10 = img.at_clamped(x0 + 1, y0, c);
        const double v01 = img.at_clamped(x0, y0 + 1, c);
        const double v11 = img.at_clamped(x0 + 1, y0 + 1, c);
        const double top = v00 + (v10 - v00) * wx;
        const double bot = v01 + (v11 - v01) * wx;
        out.at(x, y, c) = static_cast<float>(top + (bot - top) * wy);
      }
    }
  }
  return out;
}

}  // namespace taseval
