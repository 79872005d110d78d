#pragma once

#include <span>
#include <vector>

#include "ahfsr/image_plane.hpp"

namespace ahfsr {

/// Coarse-grid top-left corner of a patch, 0-based.
struct PatchOrigin {
  int row = 0;
  int col = 0;

  friend bool operator==(const PatchOrigin&, const PatchOrigin&) = default;
};

/// Tiling of a coarse image into square patches laid out at a fixed stride,
/// plus per-fine-pixel coverage counts.
struct PatchGrid {
  int patch_size = 6;
  int overlap = 2;
  int scale = 2;
  int coarse_rows = 0;
  int coarse_cols = 0;
  std::vector<PatchOrigin> origins;
  /// Number of patches covering each fine pixel, row-major over
  /// (scale*coarse_rows) x (scale*coarse_cols).
  std::vector<int> weight_map;

  int stride() const noexcept { return patch_size - overlap; }
  int fine_rows() const noexcept { return scale * coarse_rows; }
  int fine_cols() const noexcept { return scale * coarse_cols; }
  int fine_patch() const noexcept { return scale * patch_size; }
  int weight(int fine_row, int fine_col) const {
    return weight_map[static_cast<std::size_t>(fine_row) * fine_cols() + fine_col];
  }
  bool covered(int fine_row, int fine_col) const { return weight(fine_row, fine_col) > 0; }
};

/// Origins at 0, stride, 2*stride, ... along each axis while the patch still
/// fits; trailing margins stay uncovered. An image smaller than the patch in
/// either axis yields no origins.
PatchGrid plan_tiling(int coarse_rows, int coarse_cols, int patch_size,
                      int overlap, int scale);

ImagePlane extract_patch(const ImagePlane& coarse, PatchOrigin origin, int size);

struct PlacedPatch {
  PatchOrigin origin;
  ImagePlane plane;  // fine grid, (scale*patch_size)^2
};

/// Averages overlapping fine-grid patches with uniform weights. Pixels that
/// no patch covers are NaN.
ImagePlane stitch(std::span<const PlacedPatch> patches, const PatchGrid& grid);

/// Replaces every uncovered pixel with the matching `fallback` sample.
ImagePlane fill_boundary(const ImagePlane& stitched, const ImagePlane& fallback,
                         const PatchGrid& grid);

}  // namespace ahfsr
