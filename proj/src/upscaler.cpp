#include "ahfsr/upscaler.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "ahfsr/errors.hpp"
#include "ahfsr/image_ops.hpp"

namespace ahfsr {

namespace {

std::string describe(PatchOrigin o) {
  return "patch at (" + std::to_string(o.row) + "," + std::to_string(o.col) + ")";
}

// Solves one batch [first, last) of grid.origins into `layers`.
void solve_batch(const ImagePlane& low, const PatchGrid& grid,
                 const PatchModel& model, const SrConfig& config,
                 std::size_t first, std::size_t last,
                 std::vector<PatchLayers>& layers) {
  std::vector<ImagePlane> patches;
  patches.reserve(last - first);
  for (std::size_t i = first; i < last; ++i) {
    patches.push_back(extract_patch(low, grid.origins[i], grid.patch_size));
  }
  std::vector<PatchLayers> solved;
  try {
    solved = super_resolve_patches(patches, model, config);
  } catch (const DivergenceError& e) {
    const PatchOrigin where =
        grid.origins[first + static_cast<std::size_t>(std::max(e.column(), 0L))];
    throw DivergenceError(describe(where) + ": " + e.what(), e.iteration(),
                          e.column());
  }
  std::move(solved.begin(), solved.end(),
            layers.begin() + static_cast<std::ptrdiff_t>(first));
}

}  // namespace

UpscaleResult upscale_plane(const ImagePlane& low, const SrConfig& config,
                            int threads) {
  config.validate();
  const PatchModel model(config);
  return upscale_plane(low, config, model, threads);
}

UpscaleResult upscale_plane(const ImagePlane& low, const SrConfig& config,
                            const PatchModel& model, int threads) {
  config.validate();
  if (low.empty()) throw InvalidParameter("upscale: empty input plane");
  if (!low.all_finite()) throw InvalidParameter("upscale: input has non-finite samples");

  const int s = config.scale;
  UpscaleResult result;
  result.grid = plan_tiling(low.rows(), low.cols(), config.patch.size,
                            config.patch.overlap, s);
  result.bicubic = bicubic_resize(low, s * low.rows(), s * low.cols());
  const PatchGrid& grid = result.grid;
  if (grid.origins.empty()) {
    result.warnings.push_back("image " + std::to_string(low.rows()) + "x" +
                              std::to_string(low.cols()) +
                              " is smaller than one patch; output is bicubic only");
  }

  const std::size_t count = grid.origins.size();
  std::vector<PatchLayers> layers(count);
  const std::size_t batches = (count + kPatchBatch - 1) / kPatchBatch;

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::size_t>(workers, std::max<std::size_t>(batches, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t b = next++; b < batches; b = next++) {
      try {
        const std::size_t first = b * kPatchBatch;
        solve_batch(low, grid, model, config, first,
                    std::min(count, first + kPatchBatch), layers);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = batches;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<PlacedPatch> smooth_parts;
  std::vector<PlacedPatch> edge_parts;
  smooth_parts.reserve(count);
  edge_parts.reserve(count);
  result.patches.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    smooth_parts.push_back({grid.origins[i], std::move(layers[i].smooth)});
    edge_parts.push_back({grid.origins[i], std::move(layers[i].edge)});
    result.patches.push_back({grid.origins[i], std::move(layers[i].trace)});
  }

  const ImagePlane zeros(grid.fine_rows(), grid.fine_cols());
  result.smooth = fill_boundary(stitch(smooth_parts, grid), result.bicubic, grid);
  result.edge = fill_boundary(stitch(edge_parts, grid), zeros, grid);
  result.output = fill_boundary(
      assemble_output(result.smooth, result.edge, config, result.bicubic),
      result.bicubic, grid);
  return result;
}

}  // namespace ahfsr
