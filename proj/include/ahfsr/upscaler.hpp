#pragma once

#include <string>
#include <vector>

#include "ahfsr/image_plane.hpp"
#include "ahfsr/patch_tiler.hpp"
#include "ahfsr/sr_core.hpp"

namespace ahfsr {

struct PatchReport {
  PatchOrigin origin;
  IterationTrace trace;
};

struct UpscaleResult {
  ImagePlane output;   // final high-resolution plane
  ImagePlane smooth;   // stitched S; uncovered pixels hold the bicubic value
  ImagePlane edge;     // stitched E; uncovered pixels hold 0
  ImagePlane bicubic;  // bicubic upsample of the input
  PatchGrid grid;
  std::vector<PatchReport> patches;  // in grid.origins order
  std::vector<std::string> warnings;
};

/// Patches handed to one batched solve. Fixed so that results do not depend
/// on the thread count.
inline constexpr int kPatchBatch = 32;

/// Whole-plane super-resolution: tile, solve every patch, stitch S and E,
/// assemble S + conv(E, p), and fill uncovered pixels from bicubic.
///
/// `threads` <= 0 uses the hardware concurrency. Output is identical for
/// every thread count.
UpscaleResult upscale_plane(const ImagePlane& low, const SrConfig& config,
                            int threads = 1);

/// As above with a prebuilt model (must match config).
UpscaleResult upscale_plane(const ImagePlane& low, const SrConfig& config,
                            const PatchModel& model, int threads = 1);

}  // namespace ahfsr
