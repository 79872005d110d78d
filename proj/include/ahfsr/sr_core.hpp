#pragma once

#include <span>
#include <vector>

#include "ahfsr/admm_solver.hpp"
#include "ahfsr/ahf_dictionary.hpp"
#include "ahfsr/image_plane.hpp"

namespace ahfsr {

struct PatchConfig {
  int size = 6;
  int overlap = 2;
};

struct SrConfig {
  int scale = 2;
  int tau = 3;          // outer residual-refinement rounds
  double xi1 = 1e-1;    // smooth class
  double xi2 = 1e-4;    // edge class
  int angle_count = 12;
  SolverConfig solver;
  PatchConfig patch;
  double mask_threshold = 0.05;
  bool mask_enabled = false;
  GridAlignment alignment = GridAlignment::kOneBased;

  void validate() const;
};

struct IterationTrace {
  /// Entry k is ||L^(k)||_2, the residual fed to round k.
  std::vector<double> residual_norms;
  /// ADMM iterations used in each round.
  std::vector<int> admm_iterations;
  int iterations_run = 0;
};

struct PatchLayers {
  ImagePlane smooth;  // S, sum over rounds
  ImagePlane edge;    // E, sum over rounds
  IterationTrace trace;
  /// Per-round S^(k) and E^(k).
  std::vector<ImagePlane> smooth_steps;
  std::vector<ImagePlane> edge_steps;
};

/// Coarse and fine dictionaries for both classes plus the shared normal
/// matrix, built once for a (patch size, scale, config) triple.
class PatchModel {
 public:
  explicit PatchModel(const SrConfig& config);

  int patch_size() const noexcept { return patch_size_; }
  int scale() const noexcept { return scale_; }
  const Dictionary& coarse_smooth() const noexcept { return coarse_smooth_; }
  const Dictionary& coarse_edge() const noexcept { return coarse_edge_; }
  const Dictionary& fine_smooth() const noexcept { return fine_smooth_; }
  const Dictionary& fine_edge() const noexcept { return fine_edge_; }
  const NormalMatrix& normal() const noexcept { return normal_; }

 private:
  int patch_size_;
  int scale_;
  Dictionary coarse_smooth_;
  Dictionary coarse_edge_;
  Dictionary fine_smooth_;
  Dictionary fine_edge_;
  NormalMatrix normal_;
};

/// Iterative AHF super-resolution of one coarse patch: for each of tau
/// rounds fit the current residual, synthesize S^(k) and E^(k) on the fine
/// grid, bicubic-downsample their sum and subtract it from the residual.
PatchLayers super_resolve_patch(const ImagePlane& patch, const PatchModel& model,
                                const SrConfig& config);

/// Same as super_resolve_patch for every patch, with the ADMM solves of a
/// round batched across patches.
std::vector<PatchLayers> super_resolve_patches(std::span<const ImagePlane> patches,
                                               const PatchModel& model,
                                               const SrConfig& config);

/// S + conv(E', p) clamped to [0,1], where p is the 5x5 sigma=1 Gaussian and
/// E' is E, or E with the ring mask of `bicubic_upsampled` applied when
/// masking is enabled.
ImagePlane assemble_output(const ImagePlane& smooth, const ImagePlane& edge,
                           const SrConfig& config,
                           const ImagePlane& bicubic_upsampled);

}  // namespace ahfsr
