#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "taseval/image.hpp"

namespace taseval {

/// Decode a PNG or baseline JPEG byte stream into an SRGB image in [0,1].
/// Alpha, when present, is composited over white.
RasterImage decode_image(const std::vector<uint8_t>& bytes);

RasterImage load_image(const std::string& path);

/// 8-bit PNG encoding. GRAY images produce one channel, SRGB three.
std::vector<uint8_t> encode_png(const RasterImage& img);
void save_png(const RasterImage& img, const std::string& path);

/// Baseline JPEG encoding (quality 1-100).
std::vector<uint8_t> encode_jpeg(const RasterImage& img, int quality = 90);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<uint8_t>& bytes);

}  // namespace taseval
