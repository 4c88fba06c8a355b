#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "taseval/errors.hpp"

namespace taseval {

enum class Colorspace { SRGB, LINEAR, GRAY, LAB };

/// One pixel in CIE Lab (D65 / 2-degree observer). L in [0,100],
/// a and b on the green-red / blue-yellow axes.
struct LabPixel {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// Planar raster image: row-major float samples, interleaved channels.
/// SRGB/LINEAR/GRAY values live in [0,1]; LAB stores (L, a, b) per pixel.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, int channels, Colorspace cs,
              float fill = 0.0f)
      : width_(width),
        height_(height),
        channels_(channels),
        colorspace_(cs),
        data_(static_cast<size_t>(width) * height * channels, fill) {
    if (width <= 0 || height <= 0)
      throw ZeroDimension("image dimensions must be positive");
    if (channels != 1 && channels != 3)
      throw MalformedImage("channel count must be 1 or 3");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  Colorspace colorspace() const { return colorspace_; }
  void set_colorspace(Colorspace cs) { colorspace_ = cs; }

  size_t pixel_count() const { return static_cast<size_t>(width_) * height_; }
  size_t sample_count() const { return data_.size(); }

  float& at(int x, int y, int c = 0) {
    return data_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
  }
  float at(int x, int y, int c = 0) const {
    return data_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
  }

  /// Clamp-to-edge sampling; the edge policy used by every filter here.
  float at_clamped(int x, int y, int c = 0) const {
    x = x < 0 ? 0 : (x >= width_ ? width_ - 1 : x);
    y = y < 0 ? 0 : (y >= height_ ? height_ - 1 : y);
    return at(x, y, c);
  }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  bool same_shape(const RasterImage& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  bool empty() const { return data_.empty(); }

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  Colorspace colorspace_ = Colorspace::SRGB;
  std::vector<float> data_;
};

inline void require_same_shape(const RasterImage& a, const RasterImage& b) {
  if (!a.same_shape(b)) throw ShapeMismatch("image shapes differ");
}

}  // namespace taseval
