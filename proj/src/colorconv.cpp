#include "taseval/colorconv.hpp"

#include <array>
#include <cmath>

namespace taseval {

namespace {

// Most samples arrive 8-bit quantized (codec output, synthetic cards); a
// table over the 256 grid points removes the pow from the hot path while
// staying bit-identical to the closed form.
const std::array<double, 256>& decode_grid() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) {
      const double c = i / 255.0;
      t[i] = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    }
    return t;
  }();
  return table;
}

}  // namespace

double srgb_decode(double c) {
  const double scaled = c * 255.0;
  const int idx = static_cast<int>(scaled + 0.5);
  if (idx >= 0 && idx < 256 && std::abs(scaled - idx) < 1e-4)
    return decode_grid()[static_cast<size_t>(idx)];
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double srgb_encode(double c) {
  return c <= 0.0031308 ? c * 12.92 : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

RasterImage to_grayscale(const RasterImage& img) {
  if (img.colorspace() == Colorspace::GRAY) return img;
  if (img.colorspace() != Colorspace::SRGB)
    throw WrongColorspace("to_grayscale expects an SRGB image");
  RasterImage out(img.width(), img.height(), 1, Colorspace::GRAY);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      out.at(x, y) = 0.299f * img.at(x, y, 0) + 0.587f * img.at(x, y, 1) +
                     0.114f * img.at(x, y, 2);
  return out;
}

namespace {

// D65 / 2-degree observer reference white.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.00000;
constexpr double kZn = 1.08883;

double lab_f(double t) {
  constexpr double kDelta = 6.0 / 29.0;
  constexpr double kDelta3 = kDelta * kDelta * kDelta;
  return t > kDelta3 ? std::cbrt(t)
                     : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double t) {
  constexpr double kDelta = 6.0 / 29.0;
  return t > kDelta ? t * t * t : 3.0 * kDelta * kDelta * (t - 4.0 / 29.0);
}

}  // namespace

LabPixel srgb_pixel_to_lab(double r, double g, double b) {
  const double rl = srgb_decode(r);
  const double gl = srgb_decode(g);
  const double bl = srgb_decode(b);

  const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
  const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
  const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;

  const double fx = lab_f(x / kXn);
  const double fy = lab_f(y / kYn);
  const double fz = lab_f(z / kZn);

  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

void lab_pixel_to_srgb(const LabPixel& lab, double* r, double* g, double* b) {
  const double fy = (lab.L + 16.0) / 116.0;
  const double fx = fy + lab.a / 500.0;
  const double fz = fy - lab.b / 200.0;

  const double x = kXn * lab_f_inv(fx);
  const double y = kYn * lab_f_inv(fy);
  const double z = kZn * lab_f_inv(fz);

  const double rl = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
  const double gl = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
  const double bl = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;

  auto clamp01 = [](double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); };
  *r = clamp01(srgb_encode(rl));
  *g = clamp01(srgb_encode(gl));
  *b = clamp01(srgb_encode(bl));
}

RasterImage srgb_to_lab(const RasterImage& img) {
  if (img.colorspace() != Colorspace::SRGB)
    throw WrongColorspace("srgb_to_lab expects an SRGB image");
  RasterImage out(img.width(), img.height(), 3, Colorspace::LAB);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const LabPixel p =
          srgb_pixel_to_lab(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2));
      out.at(x, y, 0) = static_cast<float>(p.L);
      out.at(x, y, 1) = static_cast<float>(p.a);
      out.at(x, y, 2) = static_cast<float>(p.b);
    }
  return out;
}

RasterImage lab_to_srgb(const RasterImage& img) {
  if (img.colorspace() != Colorspace::LAB)
    throw WrongColorspace("lab_to_srgb expects a LAB image");
  RasterImage out(img.width(), img.height(), 3, Colorspace::SRGB);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      double r, g, b;
      lab_pixel_to_srgb({img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2)},
                        &r, &g, &b);
      out.at(x, y, 0) = static_cast<float>(r);
      out.at(x, y, 1) = static_cast<float>(g);
      out.at(x, y, 2) = static_cast<float>(b);
    }
  return out;
}

}  // namespace taseval
