#pragma once

#include "ahfsr/image_plane.hpp"

namespace ahfsr {

// Resampling. Both resamplers are center-aligned: destination pixel i maps to
// source coordinate (i + 0.5) * src / dst - 0.5, and borders replicate.

/// Cubic convolution resize with a = -0.5. When shrinking, the kernel is
/// stretched by the inverse scale so the result is antialiased.
ImagePlane bicubic_resize(const ImagePlane& src, int dst_rows, int dst_cols);

ImagePlane nearest_resize(const ImagePlane& src, int dst_rows, int dst_cols);

/// Keys cubic convolution kernel, a = -0.5.
double cubic_kernel(double x) noexcept;

/// Normalized size x size Gaussian on the centered integer lattice.
ImagePlane gaussian_kernel(int size = 5, double sigma = 1.0);

/// 2-D convolution with replicate padding. The kernel must have odd sides.
ImagePlane convolve(const ImagePlane& img, const ImagePlane& kernel);

/// sqrt(gx^2 + gy^2) with central differences inside and one-sided
/// differences on the border rows/cols.
ImagePlane gradient_magnitude(const ImagePlane& img);

/// 0 where the gradient magnitude of `upsampled` is <= threshold, 1 elsewhere.
BinaryMask ring_mask(const ImagePlane& upsampled, double threshold = 0.05);

ImagePlane apply_mask(const ImagePlane& plane, const BinaryMask& mask);

enum class YcbcrRange {
  kStudio,  // BT.601, Y in [16/255, 235/255]
  kFull,    // BT.601 full swing (JFIF)
};

YcbcrImage rgb_to_ycbcr(const RgbImage& rgb, YcbcrRange range = YcbcrRange::kStudio);
RgbImage ycbcr_to_rgb(const YcbcrImage& ycc, YcbcrRange range = YcbcrRange::kStudio);

/// Root-mean-square difference of two equally shaped planes.
double rmse(const ImagePlane& a, const ImagePlane& b);

}  // namespace ahfsr
