#include "taseval/colordiff.hpp"

#include <cmath>

#include "taseval/colorconv.hpp"

namespace taseval {

namespace {

constexpr double kPow25To7 = 6103515625.0;  // 25^7

double deg2rad(double d) { return d * M_PI / 180.0; }
double rad2deg(double r) { return r * 180.0 / M_PI; }

double pow7(double x) {
  const double x2 = x * x;
  return x2 * x2 * x2 * x;
}

// Hue angle in degrees, [0, 360).
double hue_deg(double a, double b) {
  if (a == 0.0 && b == 0.0) return 0.0;
  double h = rad2deg(std::atan2(b, a));
  if (h < 0.0) h += 360.0;
  return h;
}

}  // namespace

double ciede2000(const LabPixel& p, const LabPixel& q,
                 const Ciede2000Params& k) {
  if (!std::isfinite(p.L) || !std::isfinite(p.a) || !std::isfinite(p.b) ||
      !std::isfinite(q.L) || !std::isfinite(q.a) || !std::isfinite(q.b))
    throw NonFiniteInput("ciede2000 requires finite Lab values");

  const double c1 = std::hypot(p.a, p.b);
  const double c2 = std::hypot(q.a, q.b);
  const double c_avg = 0.5 * (c1 + c2);
  const double c_avg7 = pow7(c_avg);
  const double g = 0.5 * (1.0 - std::sqrt(c_avg7 / (c_avg7 + kPow25To7)));

  const double a1p = (1.0 + g) * p.a;
  const double a2p = (1.0 + g) * q.a;
  const double c1p = std::hypot(a1p, p.b);
  const double c2p = std::hypot(a2p, q.b);
  const double h1p = hue_deg(a1p, p.b);
  const double h2p = hue_deg(a2p, q.b);

  const double dlp = q.L - p.L;
  const double dcp = c2p - c1p;

  double dhp = 0.0;
  if (c1p * c2p != 0.0) {
    dhp = h2p - h1p;
    if (dhp > 180.0)
      dhp -= 360.0;
    else if (dhp < -180.0)
      dhp += 360.0;
  }
  const double dHp = 2.0 * std::sqrt(c1p * c2p) * std::sin(deg2rad(dhp) / 2.0);

  const double lp_avg = 0.5 * (p.L + q.L);
  const double cp_avg = 0.5 * (c1p + c2p);

  double hp_avg = h1p + h2p;
  if (c1p * c2p != 0.0) {
    if (std::abs(h1p - h2p) <= 180.0)
      hp_avg *= 0.5;
    else if (hp_avg < 360.0)
      hp_avg = 0.5 * (hp_avg + 360.0);
    else
      hp_avg = 0.5 * (hp_avg - 360.0);
  }

  const double t = 1.0 - 0.17 * std::cos(deg2rad(hp_avg - 30.0)) +
                   0.24 * std::cos(deg2rad(2.0 * hp_avg)) +
                   0.32 * std::cos(deg2rad(3.0 * hp_avg + 6.0)) -
                   0.20 * std::cos(deg2rad(4.0 * hp_avg - 63.0));

  const double dtheta = 30.0 * std::exp(-((hp_avg - 275.0) / 25.0) *
                                        ((hp_avg - 275.0) / 25.0));
  const double cp_avg7 = pow7(cp_avg);
  const double rc = 2.0 * std::sqrt(cp_avg7 / (cp_avg7 + kPow25To7));
  const double rt = -std::sin(deg2rad(2.0 * dtheta)) * rc;

  const double lm50sq = (lp_avg - 50.0) * (lp_avg - 50.0);
  const double sl = 1.0 + 0.015 * lm50sq / std::sqrt(20.0 + lm50sq);
  const double sc = 1.0 + 0.045 * cp_avg;
  const double sh = 1.0 + 0.015 * cp_avg * t;

  const double tl = dlp / (k.kL * sl);
  const double tc = dcp / (k.kC * sc);
  const double th = dHp / (k.kH * sh);
  return std::sqrt(tl * tl + tc * tc + th * th + rt * tc * th);
}

double mean_image_ciede2000(const RasterImage& a, const RasterImage& b,
                            const RasterImage* mask,
                            const Ciede2000Params& k) {
  require_same_shape(a, b);
  if (a.colorspace() != Colorspace::LAB || b.colorspace() != Colorspace::LAB)
    throw WrongColorspace("mean_image_ciede2000 expects LAB images");
  if (mask && (mask->width() != a.width() || mask->height() != a.height()))
    throw ShapeMismatch("mask dimensions differ from images");

  double acc = 0.0;
  size_t count = 0;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) {
      if (mask && mask->at(x, y) <= 0.5f) continue;
      const LabPixel pa{a.at(x, y, 0), a.at(x, y, 1), a.at(x, y, 2)};
      const LabPixel pb{b.at(x, y, 0), b.at(x, y, 1), b.at(x, y, 2)};
      acc += ciede2000(pa, pb, k);
      ++count;
    }
  if (count == 0) throw EmptyMask("mask selects no pixels");
  return acc / static_cast<double>(count);
}

double color_similarity(const RasterImage& ca, const RasterImage& cb,
                        const RasterImage* mask) {
  require_same_shape(ca, cb);
  const double de =
      mean_image_ciede2000(srgb_to_lab(ca), srgb_to_lab(cb), mask);
  return 1.0 - std::min(de / 50.0, 1.0);
}

}  // namespace taseval
