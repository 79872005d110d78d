#include "ahfsr/sr_core.hpp"

#include <string>

#include "ahfsr/errors.hpp"
#include "ahfsr/image_ops.hpp"

namespace ahfsr {

void SrConfig::validate() const {
  if (scale < 2) throw InvalidParameter("scale must be >= 2");
  if (tau < 1) throw InvalidParameter("tau must be >= 1");
  if (!(xi2 > 0.0)) throw InvalidParameter("xi2 must be > 0");
  if (!(xi1 > xi2)) throw InvalidParameter("xi1 must be greater than xi2");
  if (angle_count < 1) throw InvalidParameter("angle count must be >= 1");
  if (patch.size < 1 || patch.overlap < 0 || patch.overlap >= patch.size) {
    throw InvalidParameter("patch size must exceed overlap >= 0");
  }
  if (!(mask_threshold >= 0.0)) throw InvalidParameter("mask threshold must be >= 0");
  solver.validate();
}

namespace {

const SrConfig& validated(const SrConfig& config) {
  config.validate();
  return config;
}

AhfBasisSpec class_spec(const SrConfig& config, double xi) {
  return AhfBasisSpec::uniform(xi, config.angle_count,
                               config.patch.size * config.patch.size);
}

}  // namespace

PatchModel::PatchModel(const SrConfig& config)
    : patch_size_(validated(config).patch.size),
      scale_(config.scale),
      coarse_smooth_(build_dictionary(class_spec(config, config.xi1),
                                      config.patch.size, config.patch.size)),
      coarse_edge_(build_dictionary(class_spec(config, config.xi2),
                                    config.patch.size, config.patch.size)),
      fine_smooth_(build_fine_dictionary(class_spec(config, config.xi1),
                                         config.patch.size, config.patch.size,
                                         config.scale, config.alignment)),
      fine_edge_(build_fine_dictionary(class_spec(config, config.xi2),
                                       config.patch.size, config.patch.size,
                                       config.scale, config.alignment)),
      normal_(coarse_smooth_, coarse_edge_, config.solver) {}

std::vector<PatchLayers> super_resolve_patches(std::span<const ImagePlane> patches,
                                               const PatchModel& model,
                                               const SrConfig& config) {
  const int n = model.patch_size();
  const int fine = n * model.scale();
  if (config.scale != model.scale() || config.patch.size != n) {
    throw InvalidParameter("super_resolve: config does not match the patch model");
  }
  const auto count = static_cast<Eigen::Index>(patches.size());

  Eigen::MatrixXd residual(static_cast<Eigen::Index>(n) * n, count);
  for (Eigen::Index p = 0; p < count; ++p) {
    const ImagePlane& patch = patches[p];
    if (patch.rows() != n || patch.cols() != n) {
      throw ShapeError("super_resolve: patch is " + std::to_string(patch.rows()) +
                       "x" + std::to_string(patch.cols()) + ", model expects " +
                       std::to_string(n) + "x" + std::to_string(n));
    }
    residual.col(p) = patch.as_vector();
  }

  std::vector<PatchLayers> out(count);
  for (PatchLayers& layers : out) {
    layers.smooth = ImagePlane(fine, fine);
    layers.edge = ImagePlane(fine, fine);
  }

  for (int k = 0; k < config.tau; ++k) {
    const std::vector<AdmmResult> fits =
        admm_solve_batch(residual, model.normal(), config.solver);

    Eigen::MatrixXd beta1(model.fine_smooth().atoms(), count);
    Eigen::MatrixXd beta2(model.fine_edge().atoms(), count);
    for (Eigen::Index p = 0; p < count; ++p) {
      beta1.col(p) = fits[p].beta1;
      beta2.col(p) = fits[p].beta2;
    }
    const Eigen::MatrixXd smooth = model.fine_smooth().values * beta1;
    const Eigen::MatrixXd edge = model.fine_edge().values * beta2;

    for (Eigen::Index p = 0; p < count; ++p) {
      PatchLayers& layers = out[p];
      layers.trace.residual_norms.push_back(residual.col(p).norm());
      layers.trace.admm_iterations.push_back(fits[p].state.iteration);
      layers.trace.iterations_run = k + 1;

      ImagePlane s = ImagePlane::from_vector(fine, fine, smooth.col(p));
      ImagePlane e = ImagePlane::from_vector(fine, fine, edge.col(p));
      const ImagePlane down = bicubic_resize(s + e, n, n);
      residual.col(p) -= down.as_vector();

      layers.smooth += s;
      layers.edge += e;
      layers.smooth_steps.push_back(std::move(s));
      layers.edge_steps.push_back(std::move(e));
    }
  }
  return out;
}

PatchLayers super_resolve_patch(const ImagePlane& patch, const PatchModel& model,
                                const SrConfig& config) {
  return std::move(
      super_resolve_patches(std::span<const ImagePlane>(&patch, 1), model, config)
          .front());
}

ImagePlane assemble_output(const ImagePlane& smooth, const ImagePlane& edge,
                           const SrConfig& config,
                           const ImagePlane& bicubic_upsampled) {
  if (!smooth.same_shape(edge) || !smooth.same_shape(bicubic_upsampled)) {
    throw ShapeError("assemble_output: S, E and the bicubic plane differ in shape");
  }
  const ImagePlane kernel = gaussian_kernel(5, 1.0);
  const ImagePlane e = config.mask_enabled
                           ? apply_mask(edge, ring_mask(bicubic_upsampled,
                                                        config.mask_threshold))
                           : edge;
  return clamp(smooth + convolve(e, kernel));
}

}  // namespace ahfsr
