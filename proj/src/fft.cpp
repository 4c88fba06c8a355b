#include "taseval/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace taseval {

namespace {

using cd = std::complex<double>;

// Plan cache keyed by size and direction. FFTW planning is not thread-safe
// and FFTW_ESTIMATE keeps plan selection deterministic; FFTW_UNALIGNED lets
// one plan serve any buffer. Execution through fftw_execute_dft is
// re-entrant.
fftw_plan cached_plan(int w, int h, int sign) {
  using Key = std::tuple<int, int, int>;
  static std::mutex mutex;
  static std::map<Key, fftw_plan> cache;
  std::scoped_lock lock(mutex);
  const Key key{w, h, sign};
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<cd> scratch(static_cast<size_t>(w) * h);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    // fftw uses row-major (n0 = rows = h, n1 = cols = w)
    fftw_plan plan = fftw_plan_dft_2d(h, w, buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    it = cache.emplace(key, plan).first;
  }
  return it->second;
}

void execute(ComplexImage& plane, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(plane.data.data());
  fftw_execute_dft(cached_plan(plane.width, plane.height, sign), buf, buf);
}

}  // namespace

ComplexImage fft2(const RasterImage& img) {
  if (img.channels() != 1)
    throw WrongColorspace("fft2 expects a single-channel image");
  ComplexImage plane(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      plane.at(x, y) = cd(img.at(x, y), 0.0);
  execute(plane, FFTW_FORWARD);
  return plane;
}

ComplexImage fft2_complex(const ComplexImage& in) {
  ComplexImage out = in;
  execute(out, FFTW_FORWARD);
  return out;
}

ComplexImage ifft2_complex(const ComplexImage& in) {
  ComplexImage out = in;
  ifft2_complex_inplace(out);
  return out;
}

void ifft2_complex_inplace(ComplexImage& plane) {
  execute(plane, FFTW_BACKWARD);
  const double scale =
      1.0 / (static_cast<double>(plane.width) * plane.height);
  for (cd& v : plane.data) v *= scale;
}

RasterImage ifft2(const ComplexImage& plane) {
  ComplexImage full = plane;
  ifft2_complex_inplace(full);
  RasterImage img(plane.width, plane.height, 1, Colorspace::GRAY);
  for (int y = 0; y < plane.height; ++y)
    for (int x = 0; x < plane.width; ++x)
      img.at(x, y) = static_cast<float>(full.at(x, y).real());
  return img;
}

}  // namespace taseval
