#include "taseval/fsim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include "taseval/fft.hpp"
#include "taseval/loggabor.hpp"

namespace taseval {

namespace {

constexpr double kEpsilon = 1e-4;

// Memoized filter banks, keyed by size and shape parameters. Construction
// is deterministic, so cached and fresh banks are bit-identical.
const FilterBank& cached_bank(int w, int h, const FsimParams& p) {
  using Key = std::tuple<int, int, int, int, double, double, double, double>;
  static std::mutex mutex;
  static std::map<Key, FilterBank> cache;
  const Key key{w,      h,           p.scales,     p.orientations,
                p.mult, p.sigma_on_f, p.min_wavelength, p.d_theta_on_sigma};
  std::scoped_lock lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    LogGaborParams lp;
    lp.scales = p.scales;
    lp.orientations = p.orientations;
    lp.min_wavelength = p.min_wavelength;
    lp.mult = p.mult;
    lp.sigma_on_f = p.sigma_on_f;
    lp.d_theta_on_sigma = p.d_theta_on_sigma;
    it = cache.emplace(key, log_gabor_bank(w, h, lp)).first;
  }
  return it->second;
}

double median_of(std::vector<double> v) {
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    m = 0.5 * (m + v[mid - 1]);
  }
  return m;
}

}  // namespace

RasterImage phase_congruency(const RasterImage& img, const FsimParams& p) {
  if (img.channels() != 1)
    throw WrongColorspace("phase_congruency expects grayscale");
  if (img.width() < 16 || img.height() < 16)
    throw ImageTooSmall("phase_congruency needs at least 16x16");

  const int w = img.width(), h = img.height();
  const size_t n = static_cast<size_t>(w) * h;
  const FilterBank& bank = cached_bank(w, h, p);
  const ComplexImage spectrum = fft2(img);

  std::vector<double> energy_all(n, 0.0), amplitude_all(n, 0.0);
  std::vector<std::vector<double>> even(p.scales), odd(p.scales);
  ComplexImage response(w, h);
  std::vector<double> amplitude(n);

  for (int o = 0; o < p.orientations; ++o) {
    std::vector<double> sum_e(n, 0.0), sum_o(n, 0.0), sum_an(n, 0.0);
    double tau = 0.0;

    for (int s = 0; s < p.scales; ++s) {
      const ComplexImage& filt = bank.plane(s, o);
      for (size_t i = 0; i < n; ++i)
        response.data[i] = spectrum.data[i] * filt.data[i].real();
      ifft2_complex_inplace(response);

      even[s].resize(n);
      odd[s].resize(n);
      for (size_t i = 0; i < n; ++i) {
        const double re = response.data[i].real();
        const double im = response.data[i].imag();
        even[s][i] = re;
        odd[s][i] = im;
        amplitude[i] = std::sqrt(re * re + im * im);
        sum_e[i] += re;
        sum_o[i] += im;
        sum_an[i] += amplitude[i];
      }
      if (s == 0) tau = median_of(amplitude) / std::sqrt(std::log(4.0));
    }

    // Project each scale's response onto the mean phase direction.
    std::vector<double> energy(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      const double x_energy =
          std::sqrt(sum_e[i] * sum_e[i] + sum_o[i] * sum_o[i]) + kEpsilon;
      const double mean_e = sum_e[i] / x_energy;
      const double mean_o = sum_o[i] / x_energy;
      for (int s = 0; s < p.scales; ++s)
        energy[i] += even[s][i] * mean_e + odd[s][i] * mean_o -
                     std::abs(even[s][i] * mean_o - odd[s][i] * mean_e);
    }

    // Rayleigh-model noise threshold from the finest-scale median amplitude.
    const double inv_mult = 1.0 / p.mult;
    const double total_tau =
        tau * (1.0 - std::pow(inv_mult, p.scales)) / (1.0 - inv_mult);
    const double noise_mean = total_tau * std::sqrt(std::numbers::pi / 2.0);
    const double noise_sigma =
        total_tau * std::sqrt((4.0 - std::numbers::pi) / 2.0);
    const double threshold = (noise_mean + p.noise_k * noise_sigma) / 1.7;

    for (size_t i = 0; i < n; ++i) {
      energy_all[i] += std::max(energy[i] - threshold, 0.0);
      amplitude_all[i] += sum_an[i];
    }
  }

  RasterImage pc(w, h, 1, Colorspace::GRAY);
  for (size_t i = 0; i < n; ++i)
    pc.data()[i] = static_cast<float>(
        std::min(energy_all[i] / (amplitude_all[i] + kEpsilon), 1.0));
  return pc;
}

RasterImage gradient_magnitude(const RasterImage& img) {
  if (img.channels() != 1)
    throw WrongColorspace("gradient_magnitude expects grayscale");
  const int w = img.width(), h = img.height();
  RasterImage out(w, h, 1, Colorspace::GRAY);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      auto px = [&](int dx, int dy) {
        return 255.0 * img.at_clamped(x + dx, y + dy);
      };
      const double gx = (3.0 * (px(-1, -1) - px(1, -1)) +
                         10.0 * (px(-1, 0) - px(1, 0)) +
                         3.0 * (px(-1, 1) - px(1, 1))) /
                        16.0;
      const double gy = (3.0 * (px(-1, -1) - px(-1, 1)) +
                         10.0 * (px(0, -1) - px(0, 1)) +
                         3.0 * (px(1, -1) - px(1, 1))) /
                        16.0;
      out.at(x, y) = static_cast<float>(std::hypot(gx, gy));
    }
  return out;
}

double fsim(const RasterImage& a, const RasterImage& b, const FsimParams& p) {
  require_same_shape(a, b);
  if (a.channels() != 1) throw WrongColorspace("fsim expects grayscale");

  const RasterImage pc_a = phase_congruency(a, p);
  const RasterImage pc_b = phase_congruency(b, p);
  const RasterImage g_a = gradient_magnitude(a);
  const RasterImage g_b = gradient_magnitude(b);

  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.pixel_count(); ++i) {
    const double pa = pc_a.data()[i], pb = pc_b.data()[i];
    const double ga = g_a.data()[i], gb = g_b.data()[i];
    const double s_pc = (2.0 * pa * pb + p.t1) / (pa * pa + pb * pb + p.t1);
    const double s_g = (2.0 * ga * gb + p.t2) / (ga * ga + gb * gb + p.t2);
    const double pc_max = std::max(pa, pb);
    num += s_pc * s_g * pc_max;
    den += pc_max;
  }

  if (den == 0.0) {
    // Featureless inputs carry no phase structure to compare.
    for (size_t i = 0; i < a.pixel_count(); ++i)
      if (a.data()[i] != b.data()[i])
        throw DegenerateInput("both phase congruency maps are zero");
    return 1.0;
  }
  return num / den;
}

}  // namespace taseval
