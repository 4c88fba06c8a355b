#include "taseval/loggabor.hpp"

#include <cmath>
#include <numbers>

namespace taseval {

FilterBank log_gabor_bank(int w, int h, const LogGaborParams& p) {
  if (w < 1 || h < 1) throw InvalidBankParams("bank size must be positive");
  if (p.scales < 1 || p.orientations < 1)
    throw InvalidBankParams("scales and orientations must be >= 1");
  if (p.min_wavelength < 2.0)
    throw InvalidBankParams("minWavelength must be >= 2 pixels");
  if (p.mult <= 1.0 || p.sigma_on_f <= 0.0 || p.sigma_on_f >= 1.0 ||
      p.d_theta_on_sigma <= 0.0)
    throw InvalidBankParams("invalid log-Gabor shape parameters");

  FilterBank bank;
  bank.width = w;
  bank.height = h;
  bank.scales = p.scales;
  bank.orientations = p.orientations;

  // Normalized frequency coordinates in [-0.5, 0.5), unshifted layout.
  std::vector<double> fx(w), fy(h);
  for (int x = 0; x < w; ++x)
    fx[x] = (x < (w + 1) / 2 ? x : x - w) / static_cast<double>(w);
  for (int y = 0; y < h; ++y)
    fy[y] = (y < (h + 1) / 2 ? y : y - h) / static_cast<double>(h);

  const size_t n = static_cast<size_t>(w) * h;
  std::vector<double> radius(n), theta_sin(n), theta_cos(n);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const size_t i = static_cast<size_t>(y) * w + x;
      const double r = std::hypot(fx[x], fy[y]);
      radius[i] = r;
      // Angle measured with image y axis pointing down.
      const double th = std::atan2(-fy[y], fx[x]);
      theta_sin[i] = std::sin(th);
      theta_cos[i] = std::cos(th);
    }
  radius[0] = 1.0;  // avoid log(0) at DC; the bin is zeroed below

  const double log_sigma = std::log(p.sigma_on_f);
  const double theta_sigma =
      std::numbers::pi / p.orientations / p.d_theta_on_sigma;

  // Radial components, one per scale.
  std::vector<std::vector<double>> radial(p.scales,
                                          std::vector<double>(n, 0.0));
  for (int s = 0; s < p.scales; ++s) {
    const double wavelength = p.min_wavelength * std::pow(p.mult, s);
    const double f0 = 1.0 / wavelength;
    for (size_t i = 0; i < n; ++i) {
      const double lr = std::log(radius[i] / f0);
      radial[s][i] = std::exp(-(lr * lr) / (2.0 * log_sigma * log_sigma));
    }
    radial[s][0] = 0.0;
  }

  bank.planes.reserve(static_cast<size_t>(p.scales) * p.orientations);
  for (int s = 0; s < p.scales; ++s) {
    for (int o = 0; o < p.orientations; ++o) {
      const double angle = o * std::numbers::pi / p.orientations;
      const double ca = std::cos(angle), sa = std::sin(angle);
      ComplexImage plane(w, h);
      for (size_t i = 0; i < n; ++i) {
        // Angular distance via atan2 keeps the wrap-around continuous.
        const double ds = theta_sin[i] * ca - theta_cos[i] * sa;
        const double dc = theta_cos[i] * ca + theta_sin[i] * sa;
        const double dtheta = std::abs(std::atan2(ds, dc));
        const double spread =
            std::exp(-(dtheta * dtheta) / (2.0 * theta_sigma * theta_sigma));
        plane.data[i] = radial[s][i] * spread;
      }
      plane.data[0] = 0.0;
      bank.planes.push_back(std::move(plane));
    }
  }
  return bank;
}

}  // namespace taseval
