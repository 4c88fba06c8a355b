#include "oracle/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<std::complex<double>> naive_dft2(const Gray& img) {
  const int w = img.w, h = img.h;
  std::vector<std::complex<double>> out(static_cast<size_t>(w) * h);
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) {
      std::complex<double> acc(0.0, 0.0);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const double ang = -2.0 * kPi *
                             (static_cast<double>(u) * x / w +
                              static_cast<double>(v) * y / h);
          acc += img.at(x, y) * std::complex<double>(std::cos(ang),
                                                     std::sin(ang));
        }
      out[static_cast<size_t>(v) * w + u] = acc;
    }
  return out;
}

Gray naive_idft2_real(const std::vector<std::complex<double>>& f, int w,
                      int h) {
  Gray out{w, h, std::vector<double>(static_cast<size_t>(w) * h)};
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::complex<double> acc(0.0, 0.0);
      for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u) {
          const double ang = 2.0 * kPi *
                             (static_cast<double>(u) * x / w +
                              static_cast<double>(v) * y / h);
          acc += f[static_cast<size_t>(v) * w + u] *
                 std::complex<double>(std::cos(ang), std::sin(ang));
        }
      out.at(x, y) = acc.real() / (static_cast<double>(w) * h);
    }
  return out;
}

Gray dense_gaussian_blur(const Gray& img, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  const int size = 2 * radius + 1;
  std::vector<double> kernel(static_cast<size_t>(size) * size);
  double sum = 0.0;
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx) {
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      kernel[static_cast<size_t>(dy + radius) * size + (dx + radius)] = v;
      sum += v;
    }
  for (double& v : kernel) v /= sum;

  Gray out{img.w, img.h, std::vector<double>(img.v.size())};
  for (int y = 0; y < img.h; ++y)
    for (int x = 0; x < img.w; ++x) {
      double acc = 0.0;
      for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
          const int xi = std::clamp(x + dx, 0, img.w - 1);
          const int yi = std::clamp(y + dy, 0, img.h - 1);
          acc += kernel[static_cast<size_t>(dy + radius) * size +
                        (dx + radius)] *
                 img.at(xi, yi);
        }
      out.at(x, y) = acc;
    }
  return out;
}

Gray direct_resize_bilinear(const Gray& img, int w, int h) {
  Gray out{w, h, std::vector<double>(static_cast<size_t>(w) * h)};
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double fx = (x + 0.5) * img.w / w - 0.5;
      const double fy = (y + 0.5) * img.h / h - 0.5;
      const int x0 = static_cast<int>(std::floor(fx));
      const int y0 = static_cast<int>(std::floor(fy));
      const double ax = fx - x0, ay = fy - y0;
      auto sample = [&](int xi, int yi) {
        return img.at(std::clamp(xi, 0, img.w - 1),
                      std::clamp(yi, 0, img.h - 1));
      };
      out.at(x, y) = (1 - ax) * (1 - ay) * sample(x0, y0) +
                     ax * (1 - ay) * sample(x0 + 1, y0) +
                     (1 - ax) * ay * sample(x0, y0 + 1) +
                     ax * ay * sample(x0 + 1, y0 + 1);
    }
  return out;
}

Lab ref_srgb_to_lab(double r, double g, double b) {
  auto decode = [](double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
  };
  const double rl = decode(r), gl = decode(g), bl = decode(b);
  const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
  const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
  const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;
  auto f = [](double t) {
    return t > 216.0 / 24389.0 ? std::cbrt(t)
                               : (24389.0 / 27.0 * t + 16.0) / 116.0;
  };
  const double fx = f(x / 0.95047), fy = f(y / 1.0), fz = f(z / 1.08883);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double ref_log_gabor_bin(int x, int y, int w, int h, int scale,
                         int orientation, int orientations,
                         double min_wavelength, double mult, double sigma_on_f,
                         double d_theta_on_sigma) {
  if (x == 0 && y == 0) return 0.0;
  const double fx = (x < (w + 1) / 2 ? x : x - w) / static_cast<double>(w);
  const double fy = (y < (h + 1) / 2 ? y : y - h) / static_cast<double>(h);
  const double radius = std::sqrt(fx * fx + fy * fy);
  const double f0 = 1.0 / (min_wavelength * std::pow(mult, scale));
  const double lr = std::log(radius / f0);
  const double ls = std::log(sigma_on_f);
  const double radial = std::exp(-(lr * lr) / (2.0 * ls * ls));

  const double theta = std::atan2(-fy, fx);
  const double angle = orientation * kPi / orientations;
  const double ds =
      std::sin(theta) * std::cos(angle) - std::cos(theta) * std::sin(angle);
  const double dc =
      std::cos(theta) * std::cos(angle) + std::sin(theta) * std::sin(angle);
  const double dtheta = std::abs(std::atan2(ds, dc));
  const double tsigma = kPi / orientations / d_theta_on_sigma;
  return radial * std::exp(-(dtheta * dtheta) / (2.0 * tsigma * tsigma));
}

SsimRef sliding_ssim(const Gray& a, const Gray& b, int window, double sigma,
                     double k1, double k2) {
  const int radius = window / 2;
  std::vector<double> wgt(static_cast<size_t>(window) * window);
  double wsum = 0.0;
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx) {
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      wgt[static_cast<size_t>(dy + radius) * window + (dx + radius)] = v;
      wsum += v;
    }
  for (double& v : wgt) v /= wsum;

  const double c1 = k1 * k1, c2 = k2 * k2;
  double ssim_acc = 0.0, cs_acc = 0.0;
  for (int y = 0; y < a.h; ++y)
    for (int x = 0; x < a.w; ++x) {
      double mu_a = 0.0, mu_b = 0.0;
      for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
          const double wv =
              wgt[static_cast<size_t>(dy + radius) * window + (dx + radius)];
          mu_a += wv * a.at(std::clamp(x + dx, 0, a.w - 1),
                            std::clamp(y + dy, 0, a.h - 1));
          mu_b += wv * b.at(std::clamp(x + dx, 0, b.w - 1),
                            std::clamp(y + dy, 0, b.h - 1));
        }
      double va = 0.0, vb = 0.0, cov = 0.0;
      for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
          const double wv =
              wgt[static_cast<size_t>(dy + radius) * window + (dx + radius)];
          const double pa = a.at(std::clamp(x + dx, 0, a.w - 1),
                                 std::clamp(y + dy, 0, a.h - 1));
          const double pb = b.at(std::clamp(x + dx, 0, b.w - 1),
                                 std::clamp(y + dy, 0, b.h - 1));
          va += wv * (pa - mu_a) * (pa - mu_a);
          vb += wv * (pb - mu_b) * (pb - mu_b);
          cov += wv * (pa - mu_a) * (pb - mu_b);
        }
      const double lum =
          (2.0 * mu_a * mu_b + c1) / (mu_a * mu_a + mu_b * mu_b + c1);
      const double cs = (2.0 * cov + c2) / (va + vb + c2);
      ssim_acc += lum * cs;
      cs_acc += cs;
    }
  const double n = static_cast<double>(a.w) * a.h;
  return {ssim_acc / n, cs_acc / n};
}

namespace {

Gray pool2(const Gray& img) {
  Gray out{img.w / 2, img.h / 2,
           std::vector<double>(static_cast<size_t>(img.w / 2) * (img.h / 2))};
  for (int y = 0; y < out.h; ++y)
    for (int x = 0; x < out.w; ++x)
      out.at(x, y) = 0.25 * (img.at(2 * x, 2 * y) + img.at(2 * x + 1, 2 * y) +
                             img.at(2 * x, 2 * y + 1) +
                             img.at(2 * x + 1, 2 * y + 1));
  return out;
}

}  // namespace

double ref_ms_ssim(const Gray& a, const Gray& b, int window, double sigma,
                   double k1, double k2, const std::vector<double>& weights) {
  int levels = 0;
  int dim = std::min(a.w, a.h);
  while (dim >= window && levels < static_cast<int>(weights.size())) {
    ++levels;
    dim /= 2;
  }
  std::vector<double> w(weights.begin(), weights.begin() + levels);
  double s = 0.0;
  for (double v : w) s += v;
  for (double& v : w) v /= s;

  Gray ca = a, cb = b;
  double out = 1.0;
  for (int l = 0; l < levels; ++l) {
    const SsimRef r = sliding_ssim(ca, cb, window, sigma, k1, k2);
    const double term = l + 1 == levels ? std::max(r.ssim, 0.0)
                                        : std::max(r.cs, 0.0);
    out *= std::pow(term, w[l]);
    if (l + 1 < levels) {
      ca = pool2(ca);
      cb = pool2(cb);
    }
  }
  return out;
}

double ref_ciede2000(const Lab& c1, const Lab& c2) {
  const double p25_7 = std::pow(25.0, 7.0);
  const double ch1 = std::sqrt(c1.a * c1.a + c1.b * c1.b);
  const double ch2 = std::sqrt(c2.a * c2.a + c2.b * c2.b);
  const double cbar = (ch1 + ch2) / 2.0;
  const double g =
      0.5 * (1.0 - std::sqrt(std::pow(cbar, 7.0) /
                             (std::pow(cbar, 7.0) + p25_7)));
  const double a1p = (1.0 + g) * c1.a;
  const double a2p = (1.0 + g) * c2.a;
  const double c1p = std::sqrt(a1p * a1p + c1.b * c1.b);
  const double c2p = std::sqrt(a2p * a2p + c2.b * c2.b);
  auto hue = [](double ap, double bp) {
    if (ap == 0.0 && bp == 0.0) return 0.0;
    double h = std::atan2(bp, ap) * 180.0 / kPi;
    return h < 0.0 ? h + 360.0 : h;
  };
  const double h1p = hue(a1p, c1.b);
  const double h2p = hue(a2p, c2.b);

  const double dL = c2.L - c1.L;
  const double dC = c2p - c1p;
  double dh = 0.0;
  if (c1p * c2p != 0.0) {
    dh = h2p - h1p;
    if (dh > 180.0) dh -= 360.0;
    if (dh < -180.0) dh += 360.0;
  }
  const double dH =
      2.0 * std::sqrt(c1p * c2p) * std::sin(dh / 2.0 * kPi / 180.0);

  const double lbar = (c1.L + c2.L) / 2.0;
  const double cbarp = (c1p + c2p) / 2.0;
  double hbar = h1p + h2p;
  if (c1p * c2p != 0.0) {
    if (std::abs(h1p - h2p) <= 180.0)
      hbar /= 2.0;
    else if (hbar < 360.0)
      hbar = (hbar + 360.0) / 2.0;
    else
      hbar = (hbar - 360.0) / 2.0;
  }
  const double rad = kPi / 180.0;
  const double t = 1.0 - 0.17 * std::cos((hbar - 30.0) * rad) +
                   0.24 * std::cos(2.0 * hbar * rad) +
                   0.32 * std::cos((3.0 * hbar + 6.0) * rad) -
                   0.20 * std::cos((4.0 * hbar - 63.0) * rad);
  const double dtheta =
      30.0 * std::exp(-std::pow((hbar - 275.0) / 25.0, 2.0));
  const double rc = 2.0 * std::sqrt(std::pow(cbarp, 7.0) /
                                    (std::pow(cbarp, 7.0) + p25_7));
  const double sl = 1.0 + 0.015 * std::pow(lbar - 50.0, 2.0) /
                              std::sqrt(20.0 + std::pow(lbar - 50.0, 2.0));
  const double sc = 1.0 + 0.045 * cbarp;
  const double sh = 1.0 + 0.015 * cbarp * t;
  const double rt = -std::sin(2.0 * dtheta * rad) * rc;
  return std::sqrt(std::pow(dL / sl, 2.0) + std::pow(dC / sc, 2.0) +
                   std::pow(dH / sh, 2.0) + rt * (dC / sc) * (dH / sh));
}

const std::vector<CiedeVector>& ciede2000_test_vectors() {
  // Published supplementary test data for the CIEDE2000 formula.
  static const std::vector<CiedeVector> v = {
      {{50.0000, 2.6772, -79.7751}, {50.0000, 0.0000, -82.7485}, 2.0425},
      {{50.0000, 3.1571, -77.2803}, {50.0000, 0.0000, -82.7485}, 2.8615},
      {{50.0000, 2.8361, -74.0200}, {50.0000, 0.0000, -82.7485}, 3.4412},
      {{50.0000, -1.3802, -84.2814}, {50.0000, 0.0000, -82.7485}, 1.0000},
      {{50.0000, -1.1848, -84.8006}, {50.0000, 0.0000, -82.7485}, 1.0000},
      {{50.0000, -0.9009, -85.5211}, {50.0000, 0.0000, -82.7485}, 1.0000},
      {{50.0000, 0.0000, 0.0000}, {50.0000, -1.0000, 2.0000}, 2.3669},
      {{50.0000, -1.0000, 2.0000}, {50.0000, 0.0000, 0.0000}, 2.3669},
      {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0009}, 7.1792},
      {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0010}, 7.1792},
      {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0011}, 7.2195},
      {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0012}, 7.2195},
      {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0009, -2.4900}, 4.8045},
      {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0010, -2.4900}, 4.8045},
      {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0011, -2.4900}, 4.7461},
      {{50.0000, 2.5000, 0.0000}, {50.0000, 0.0000, -2.5000}, 4.3065},
      {{50.0000, 2.5000, 0.0000}, {73.0000, 25.0000, -18.0000}, 27.1492},
      {{50.0000, 2.5000, 0.0000}, {61.0000, -5.0000, 29.0000}, 22.8977},
      {{50.0000, 2.5000, 0.0000}, {56.0000, -27.0000, -3.0000}, 31.9030},
      {{50.0000, 2.5000, 0.0000}, {58.0000, 24.0000, 15.0000}, 19.4535},
      {{50.0000, 2.5000, 0.0000}, {50.0000, 3.1736, 0.5854}, 1.0000},
      {{50.0000, 2.5000, 0.0000}, {50.0000, 3.2972, 0.0000}, 1.0000},
      {{50.0000, 2.5000, 0.0000}, {50.0000, 1.8634, 0.5757}, 1.0000},
      {{50.0000, 2.5000, 0.0000}, {50.0000, 3.2592, 0.3350}, 1.0000},
      {{60.2574, -34.0099, 36.2677}, {60.4626, -34.1751, 39.4387}, 1.2644},
      {{63.0109, -31.0961, -5.8663}, {62.8187, -29.7946, -4.0864}, 1.2630},
      {{61.2901, 3.7196, -5.3901}, {61.4292, 2.2480, -4.9620}, 1.8731},
      {{35.0831, -44.1164, 3.7933}, {35.0232, -40.0716, 1.5901}, 1.8645},
      {{22.7233, 20.0904, -46.6940}, {23.0331, 14.9730, -42.5619}, 2.0373},
      {{36.4612, 47.8580, 18.3852}, {36.2715, 50.5065, 21.2231}, 1.4146},
      {{90.8027, -2.0831, 1.4410}, {91.1528, -1.6435, 0.0447}, 1.4441},
      {{90.9257, -0.5406, -0.9208}, {88.6381, -0.8985, -0.7239}, 1.5381},
      {{6.7747, -0.2908, -2.4247}, {5.8714, -0.0985, -2.2286}, 0.6377},
      {{2.0776, 0.0795, -1.1350}, {0.9033, -0.0636, -0.5514}, 0.9082},
  };
  return v;
}

namespace {

struct ComplexGrid {
  int w, h;
  std::vector<std::complex<double>> v;
};

// Circular convolution of a real image with a complex spatial kernel.
ComplexGrid circular_convolve(const Gray& img, const ComplexGrid& kernel) {
  ComplexGrid out{img.w, img.h,
                  std::vector<std::complex<double>>(
                      static_cast<size_t>(img.w) * img.h)};
  for (int y = 0; y < img.h; ++y)
    for (int x = 0; x < img.w; ++x) {
      std::complex<double> acc(0.0, 0.0);
      for (int v = 0; v < img.h; ++v)
        for (int u = 0; u < img.w; ++u) {
          const int kx = ((x - u) % img.w + img.w) % img.w;
          const int ky = ((y - v) % img.h + img.h) % img.h;
          acc += img.at(u, v) * kernel.v[static_cast<size_t>(ky) * img.w + kx];
        }
      out.v[static_cast<size_t>(y) * img.w + x] = acc;
    }
  return out;
}

// Spatial kernel of one filter: inverse DFT of the transfer function.
ComplexGrid spatial_kernel(int w, int h, int scale, int orientation,
                           int orientations, double min_wavelength,
                           double mult, double sigma_on_f,
                           double d_theta_on_sigma) {
  ComplexGrid k{w, h,
                std::vector<std::complex<double>>(static_cast<size_t>(w) * h)};
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::complex<double> acc(0.0, 0.0);
      for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u) {
          const double g =
              ref_log_gabor_bin(u, v, w, h, scale, orientation, orientations,
                                min_wavelength, mult, sigma_on_f,
                                d_theta_on_sigma);
          if (g == 0.0) continue;
          const double ang = 2.0 * kPi *
                             (static_cast<double>(u) * x / w +
                              static_cast<double>(v) * y / h);
          acc += g * std::complex<double>(std::cos(ang), std::sin(ang));
        }
      k.v[static_cast<size_t>(y) * w + x] = acc / (static_cast<double>(w) * h);
    }
  return k;
}

double median_copy(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Gray ref_phase_congruency(const Gray& img, int scales, int orientations,
                          double min_wavelength, double mult,
                          double sigma_on_f, double d_theta_on_sigma,
                          double noise_k) {
  const int w = img.w, h = img.h;
  const size_t n = static_cast<size_t>(w) * h;
  std::vector<double> energy_all(n, 0.0), an_all(n, 0.0);

  for (int o = 0; o < orientations; ++o) {
    std::vector<ComplexGrid> responses;
    std::vector<double> sum_e(n, 0.0), sum_o(n, 0.0), sum_an(n, 0.0);
    double tau = 0.0;
    for (int s = 0; s < scales; ++s) {
      const ComplexGrid kernel =
          spatial_kernel(w, h, s, o, orientations, min_wavelength, mult,
                         sigma_on_f, d_theta_on_sigma);
      responses.push_back(circular_convolve(img, kernel));
      std::vector<double> amp(n);
      for (size_t i = 0; i < n; ++i) {
        amp[i] = std::abs(responses.back().v[i]);
        sum_e[i] += responses.back().v[i].real();
        sum_o[i] += responses.back().v[i].imag();
        sum_an[i] += amp[i];
      }
      if (s == 0) tau = median_copy(amp) / std::sqrt(std::log(4.0));
    }
    std::vector<double> energy(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      const double xe =
          std::sqrt(sum_e[i] * sum_e[i] + sum_o[i] * sum_o[i]) + 1e-4;
      const double me = sum_e[i] / xe, mo = sum_o[i] / xe;
      for (int s = 0; s < scales; ++s) {
        const double e = responses[s].v[i].real();
        const double od = responses[s].v[i].imag();
        energy[i] += e * me + od * mo - std::abs(e * mo - od * me);
      }
    }
    const double total_tau = tau * (1.0 - std::pow(1.0 / mult, scales)) /
                             (1.0 - 1.0 / mult);
    const double t =
        (total_tau * std::sqrt(kPi / 2.0) +
         noise_k * total_tau * std::sqrt((4.0 - kPi) / 2.0)) /
        1.7;
    for (size_t i = 0; i < n; ++i) {
      energy_all[i] += std::max(energy[i] - t, 0.0);
      an_all[i] += sum_an[i];
    }
  }

  Gray pc{w, h, std::vector<double>(n)};
  for (size_t i = 0; i < n; ++i)
    pc.v[i] = std::min(energy_all[i] / (an_all[i] + 1e-4), 1.0);
  return pc;
}

double ref_fsim(const Gray& a, const Gray& b) {
  const Gray pa = ref_phase_congruency(a, 4, 4, 6.0, 2.0, 0.55, 1.2, 2.0);
  const Gray pb = ref_phase_congruency(b, 4, 4, 6.0, 2.0, 0.55, 1.2, 2.0);

  auto scharr = [](const Gray& g) {
    Gray out{g.w, g.h, std::vector<double>(g.v.size())};
    for (int y = 0; y < g.h; ++y)
      for (int x = 0; x < g.w; ++x) {
        auto px = [&](int dx, int dy) {
          return 255.0 * g.at(std::clamp(x + dx, 0, g.w - 1),
                              std::clamp(y + dy, 0, g.h - 1));
        };
        const double gx =
            (3.0 * (px(-1, -1) - px(1, -1)) + 10.0 * (px(-1, 0) - px(1, 0)) +
             3.0 * (px(-1, 1) - px(1, 1))) /
            16.0;
        const double gy =
            (3.0 * (px(-1, -1) - px(-1, 1)) + 10.0 * (px(0, -1) - px(0, 1)) +
             3.0 * (px(1, -1) - px(1, 1))) /
            16.0;
        out.at(x, y) = std::sqrt(gx * gx + gy * gy);
      }
    return out;
  };
  const Gray ga = scharr(a), gb = scharr(b);

  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < pa.v.size(); ++i) {
    const double spc = (2.0 * pa.v[i] * pb.v[i] + 0.85) /
                       (pa.v[i] * pa.v[i] + pb.v[i] * pb.v[i] + 0.85);
    const double sg = (2.0 * ga.v[i] * gb.v[i] + 160.0) /
                      (ga.v[i] * ga.v[i] + gb.v[i] * gb.v[i] + 160.0);
    const double pcm = std::max(pa.v[i], pb.v[i]);
    num += spc * sg * pcm;
    den += pcm;
  }
  return num / den;
}

int ref_levenshtein(const std::vector<uint32_t>& a,
                    const std::vector<uint32_t>& b) {
  const size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
  for (size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= m; ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[n][m];
}

double ref_spearman(const std::vector<double>& x,
                    const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    const size_t n = v.size();
    std::vector<double> r(n);
    for (size_t i = 0; i < n; ++i) {
      size_t less = 0, equal = 0;
      for (size_t j = 0; j < n; ++j) {
        if (v[j] < v[i]) ++less;
        if (v[j] == v[i]) ++equal;
      }
      // average rank of the tie group, 1-based
      r[i] = less + (equal + 1) / 2.0;
    }
    return r;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, dx = 0.0, dy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

double ref_icc3k(const std::vector<std::vector<double>>& m) {
  const size_t n = m.size(), k = m[0].size();
  double grand = 0.0;
  for (const auto& row : m)
    for (double v : row) grand += v;
  grand /= static_cast<double>(n * k);

  double ss_total = 0.0, ss_rows = 0.0, ss_cols = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double rm = 0.0;
    for (double v : m[i]) rm += v;
    rm /= k;
    ss_rows += k * (rm - grand) * (rm - grand);
  }
  for (size_t j = 0; j < k; ++j) {
    double cm = 0.0;
    for (size_t i = 0; i < n; ++i) cm += m[i][j];
    cm /= n;
    ss_cols += n * (cm - grand) * (cm - grand);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j)
      ss_total += (m[i][j] - grand) * (m[i][j] - grand);

  const double ss_err = ss_total - ss_rows - ss_cols;
  const double ms_rows = ss_rows / (n - 1);
  const double ms_err = ss_err / ((n - 1) * (k - 1));
  return (ms_rows - ms_err) / ms_rows;
}

double ref_frechet_diag_gaussians(const std::vector<double>& mu1,
                                  const std::vector<double>& var1,
                                  const std::vector<double>& mu2,
                                  const std::vector<double>& var2) {
  double acc = 0.0;
  for (size_t i = 0; i < mu1.size(); ++i) {
    const double dm = mu1[i] - mu2[i];
    const double ds = std::sqrt(var1[i]) - std::sqrt(var2[i]);
    acc += dm * dm + ds * ds;
  }
  return acc;
}

}  // namespace oracle
