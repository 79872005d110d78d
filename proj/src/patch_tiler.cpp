#include "ahfsr/patch_tiler.hpp"

#include <limits>
#include <string>

#include "ahfsr/errors.hpp"

namespace ahfsr {

namespace {

std::vector<int> axis_origins(int extent, int patch, int stride) {
  std::vector<int> out;
  for (int o = 0; o + patch <= extent; o += stride) out.push_back(o);
  return out;
}

}  // namespace

PatchGrid plan_tiling(int coarse_rows, int coarse_cols, int patch_size,
                      int overlap, int scale) {
  if (patch_size < 1 || overlap < 0 || overlap >= patch_size) {
    throw InvalidParameter("tiling needs patch_size > overlap >= 0");
  }
  if (scale < 1) throw InvalidParameter("tiling scale must be >= 1");
  if (coarse_rows < 1 || coarse_cols < 1) {
    throw InvalidParameter("tiling needs a non-empty image");
  }

  PatchGrid grid;
  grid.patch_size = patch_size;
  grid.overlap = overlap;
  grid.scale = scale;
  grid.coarse_rows = coarse_rows;
  grid.coarse_cols = coarse_cols;
  grid.weight_map.assign(static_cast<std::size_t>(grid.fine_rows()) * grid.fine_cols(), 0);

  const std::vector<int> rows = axis_origins(coarse_rows, patch_size, grid.stride());
  const std::vector<int> cols = axis_origins(coarse_cols, patch_size, grid.stride());
  for (int r : rows) {
    for (int c : cols) grid.origins.push_back({r, c});
  }

  const int fp = grid.fine_patch();
  for (const PatchOrigin& o : grid.origins) {
    for (int r = 0; r < fp; ++r) {
      const std::size_t row = static_cast<std::size_t>(o.row * scale + r) * grid.fine_cols();
      for (int c = 0; c < fp; ++c) ++grid.weight_map[row + o.col * scale + c];
    }
  }
  return grid;
}

ImagePlane extract_patch(const ImagePlane& coarse, PatchOrigin origin, int size) {
  if (origin.row < 0 || origin.col < 0 || origin.row + size > coarse.rows() ||
      origin.col + size > coarse.cols()) {
    throw std::logic_error("extract_patch: patch at (" + std::to_string(origin.row) +
                           "," + std::to_string(origin.col) +
                           ") leaves the image");
  }
  ImagePlane patch(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) patch(r, c) = coarse(origin.row + r, origin.col + c);
  }
  return patch;
}

ImagePlane stitch(std::span<const PlacedPatch> patches, const PatchGrid& grid) {
  const int fp = grid.fine_patch();
  ImagePlane sum(grid.fine_rows(), grid.fine_cols());
  for (const PlacedPatch& p : patches) {
    if (p.plane.rows() != fp || p.plane.cols() != fp) {
      throw ShapeError("stitch: patch plane is not " + std::to_string(fp) + "x" +
                       std::to_string(fp));
    }
    const int r0 = p.origin.row * grid.scale;
    const int c0 = p.origin.col * grid.scale;
    if (p.origin.row < 0 || p.origin.col < 0 || r0 + fp > grid.fine_rows() ||
        c0 + fp > grid.fine_cols()) {
      throw std::logic_error("stitch: origin (" + std::to_string(p.origin.row) +
                             "," + std::to_string(p.origin.col) +
                             ") is outside the grid");
    }
    for (int r = 0; r < fp; ++r) {
      for (int c = 0; c < fp; ++c) sum(r0 + r, c0 + c) += p.plane(r, c);
    }
  }
  for (int r = 0; r < grid.fine_rows(); ++r) {
    for (int c = 0; c < grid.fine_cols(); ++c) {
      const int w = grid.weight(r, c);
      sum(r, c) = w > 0 ? sum(r, c) / w : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return sum;
}

ImagePlane fill_boundary(const ImagePlane& stitched, const ImagePlane& fallback,
                         const PatchGrid& grid) {
  if (!stitched.same_shape(fallback) || stitched.rows() != grid.fine_rows() ||
      stitched.cols() != grid.fine_cols()) {
    throw ShapeError("fill_boundary: plane shapes do not match the tiling");
  }
  ImagePlane out = stitched;
  for (int r = 0; r < out.rows(); ++r) {
    for (int c = 0; c < out.cols(); ++c) {
      if (!grid.covered(r, c)) out(r, c) = fallback(r, c);
    }
  }
  return out;
}

}  // namespace ahfsr
