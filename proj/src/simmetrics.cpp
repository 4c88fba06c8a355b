#include "taseval/simmetrics.hpp"

#include <cmath>
#include <limits>

namespace taseval {

double mse(const RasterImage& a, const RasterImage& b) {
  require_same_shape(a, b);
  double acc = 0.0;
  const auto da = a.data(), db = b.data();
  for (size_t i = 0; i < da.size(); ++i) {
    const double d = static_cast<double>(da[i]) - db[i];
    acc += d * d;
  }
  return acc / static_cast<double>(da.size());
}

double psnr(const RasterImage& a, const RasterImage& b) {
  const double m = mse(a, b);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / m);
}

namespace {

// Normalized 1-D window of odd length `size`.
std::vector<double> window_kernel(int size, double sigma) {
  std::vector<double> k(size);
  const int radius = size / 2;
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable windowed mean with clamp-to-edge, single channel.
std::vector<double> windowed_mean(const std::vector<double>& img, int w, int h,
                                  const std::vector<double>& k) {
  const int radius = static_cast<int>(k.size() / 2);
  std::vector<double> tmp(img.size()), out(img.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        int xi = x + i;
        xi = xi < 0 ? 0 : (xi >= w ? w - 1 : xi);
        acc += k[i + radius] * img[static_cast<size_t>(y) * w + xi];
      }
      tmp[static_cast<size_t>(y) * w + x] = acc;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        int yi = y + i;
        yi = yi < 0 ? 0 : (yi >= h ? h - 1 : yi);
        acc += k[i + radius] * tmp[static_cast<size_t>(yi) * w + x];
      }
      out[static_cast<size_t>(y) * w + x] = acc;
    }
  return out;
}

struct SsimMoments {
  std::vector<double> mu_a, mu_b, var_a, var_b, cov;
};

SsimMoments local_moments(const RasterImage& a, const RasterImage& b,
                          const SsimParams& p) {
  const int w = a.width(), h = a.height();
  const size_t n = a.pixel_count();
  std::vector<double> xa(n), xb(n), xaa(n), xbb(n), xab(n);
  for (size_t i = 0; i < n; ++i) {
    xa[i] = a.data()[i];
    xb[i] = b.data()[i];
    xaa[i] = xa[i] * xa[i];
    xbb[i] = xb[i] * xb[i];
    xab[i] = xa[i] * xb[i];
  }
  const std::vector<double> k = window_kernel(p.window_size, p.window_sigma);
  SsimMoments m;
  m.mu_a = windowed_mean(xa, w, h, k);
  m.mu_b = windowed_mean(xb, w, h, k);
  m.var_a = windowed_mean(xaa, w, h, k);
  m.var_b = windowed_mean(xbb, w, h, k);
  m.cov = windowed_mean(xab, w, h, k);
  for (size_t i = 0; i < n; ++i) {
    m.var_a[i] -= m.mu_a[i] * m.mu_a[i];
    m.var_b[i] -= m.mu_b[i] * m.mu_b[i];
    m.cov[i] -= m.mu_a[i] * m.mu_b[i];
  }
  return m;
}

void check_ssim_inputs(const RasterImage& a, const RasterImage& b,
                       const SsimParams& p) {
  require_same_shape(a, b);
  if (a.channels() != 1)
    throw WrongColorspace("ssim expects grayscale images");
  if (a.width() < p.window_size || a.height() < p.window_size)
    throw ImageTooSmall("image smaller than the SSIM window");
  if (p.window_size % 2 == 0 || p.k1 <= 0.0 || p.k2 <= 0.0)
    throw InvalidConfig("SSIM window must be odd and k1, k2 positive");
}

// Mean SSIM map and mean contrast-structure map in one pass.
struct SsimLevel {
  double ssim;
  double cs;
};

SsimLevel ssim_level(const RasterImage& a, const RasterImage& b,
                     const SsimParams& p) {
  const SsimMoments m = local_moments(a, b, p);
  const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
  const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);
  double ssim_acc = 0.0, cs_acc = 0.0;
  const size_t n = a.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    const double lum = (2.0 * m.mu_a[i] * m.mu_b[i] + c1) /
                       (m.mu_a[i] * m.mu_a[i] + m.mu_b[i] * m.mu_b[i] + c1);
    const double cs = (2.0 * m.cov[i] + c2) / (m.var_a[i] + m.var_b[i] + c2);
    ssim_acc += lum * cs;
    cs_acc += cs;
  }
  return {ssim_acc / static_cast<double>(n), cs_acc / static_cast<double>(n)};
}

// 2x2 average pooling with stride 2; trailing odd row/column dropped.
RasterImage downsample2(const RasterImage& img) {
  const int w = img.width() / 2, h = img.height() / 2;
  RasterImage out(w, h, 1, img.colorspace());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out.at(x, y) = 0.25f * (img.at(2 * x, 2 * y) + img.at(2 * x + 1, 2 * y) +
                              img.at(2 * x, 2 * y + 1) +
                              img.at(2 * x + 1, 2 * y + 1));
  return out;
}

}  // namespace

double ssim(const RasterImage& a, const RasterImage& b, const SsimParams& p) {
  check_ssim_inputs(a, b, p);
  return ssim_level(a, b, p).ssim;
}

const std::vector<double>& ms_ssim_default_weights() {
  static const std::vector<double> w = {0.0448, 0.2856, 0.3001, 0.2363,
                                        0.1333};
  return w;
}

double ms_ssim(const RasterImage& a, const RasterImage& b, const SsimParams& p,
               const std::vector<double>& weights) {
  check_ssim_inputs(a, b, p);

  // Levels supported by the resolution: the coarsest level must still fit
  // the window.
  int min_dim = std::min(a.width(), a.height());
  int supported = 0;
  while (min_dim >= p.window_size &&
         supported < static_cast<int>(weights.size())) {
    ++supported;
    min_dim /= 2;
  }
  if (supported == 0) throw ImageTooSmall("no level fits the SSIM window");

  std::vector<double> w(weights.begin(), weights.begin() + supported);
  double wsum = 0.0;
  for (double v : w) wsum += v;
  for (double& v : w) v /= wsum;

  RasterImage ca = a, cb = b;
  double result = 1.0;
  for (int level = 0; level < supported; ++level) {
    const SsimLevel s = ssim_level(ca, cb, p);
    // Negative terms are clamped before exponentiation.
    const double term =
        level + 1 == supported ? std::max(s.ssim, 0.0) : std::max(s.cs, 0.0);
    result *= std::pow(term, w[level]);
    if (level + 1 < supported) {
      ca = downsample2(ca);
      cb = downsample2(cb);
    }
  }
  return result;
}

}  // namespace taseval
