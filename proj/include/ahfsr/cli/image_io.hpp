#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "ahfsr/image_plane.hpp"

namespace ahfsr::cli {

/// Unreadable, unwritable or unsupported image file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 8-bit raster with interleaved samples; channels is 1 (gray) or 3 (RGB).
struct RasterImage {
  int rows = 0;
  int cols = 0;
  int channels = 1;
  std::vector<std::uint8_t> samples;

  std::uint8_t at(int r, int c, int ch) const {
    return samples[(static_cast<std::size_t>(r) * cols + c) * channels + ch];
  }
};

/// Reads PNG or binary/ASCII PGM/PPM. Alpha is dropped and palette or
/// 16-bit PNGs are reduced to 8-bit gray or RGB.
RasterImage read_image(const std::filesystem::path& path);

/// Writes PNG (by .png extension) or binary PGM/PPM (.pgm/.ppm/.pnm).
void write_image(const std::filesystem::path& path, const RasterImage& image);

/// Clamp to [0,1], scale by 255 and round half away from zero.
std::uint8_t quantize_sample(double v) noexcept;

ImagePlane channel_plane(const RasterImage& image, int channel);
RgbImage rgb_planes(const RasterImage& image);
RasterImage to_raster(const ImagePlane& gray);
RasterImage to_raster(const RgbImage& rgb);

}  // namespace ahfsr::cli
