#pragma once

#include <vector>

#include <Eigen/Core>

#include "ahfsr/image_plane.hpp"

namespace ahfsr {

/// Approximated Heaviside function 1/2 + atan(x / xi) / pi.
///
/// Smaller xi gives a sharper transition around x = 0. Throws
/// InvalidParameter for xi <= 0.
double eval_ahf(double x, double xi);

/// Parameterization of one class of AHF atoms psi(cos(t) x + sin(t) y + c):
/// one atom per (angle t, offset c) pair, with offsets c = 1/q, 2/q, ..., 1.
struct AhfBasisSpec {
  double xi = 0.1;
  std::vector<double> angles;
  int offset_count = 1;

  /// `angle_count` angles evenly spaced on [0, 2*pi).
  static AhfBasisSpec uniform(double xi, int angle_count, int offset_count);

  int angle_count() const noexcept { return static_cast<int>(angles.size()); }
  int size() const noexcept { return angle_count() * offset_count; }
  double offset(int j) const noexcept {
    return static_cast<double>(j + 1) / offset_count;
  }

  void validate() const;
};

/// How fine-grid sample coordinates relate to the coarse grid.
enum class GridAlignment {
  /// Fine pixel i (1-based) of an s*n grid sits at i / (s*n); coarse pixel i
  /// coincides with fine pixel s*i.
  kOneBased,
  /// Fine pixel i sits at (i + (s-1)/2) / (s*n), so every coarse sample is
  /// the center of its s x s block of fine pixels, matching the
  /// center-aligned resamplers.
  kCenterAligned,
};

/// Dense matrix of AHF evaluations: one row per grid pixel (row-major pixel
/// order, pixel (i,j) at row i*grid_cols + j), one column per atom.
/// Columns are angle-major: atom (t, j) is column t * offset_count + j.
struct Dictionary {
  Eigen::MatrixXd values;
  int grid_rows = 0;
  int grid_cols = 0;
  AhfBasisSpec spec;

  Eigen::Index column(int angle, int offset) const noexcept {
    return static_cast<Eigen::Index>(angle) * spec.offset_count + offset;
  }
  Eigen::Index atoms() const noexcept { return values.cols(); }
  Eigen::Index pixels() const noexcept { return values.rows(); }
};

/// Dictionary on the grid x_i = i/grid_rows, y_j = j/grid_cols (1-based).
Dictionary build_dictionary(const AhfBasisSpec& spec, int grid_rows, int grid_cols);

/// Dictionary on the scale-times finer grid covering a coarse_rows x
/// coarse_cols patch. With kOneBased this equals
/// build_dictionary(spec, scale*coarse_rows, scale*coarse_cols).
Dictionary build_fine_dictionary(const AhfBasisSpec& spec, int coarse_rows,
                                 int coarse_cols, int scale,
                                 GridAlignment alignment);

/// psi1 * beta1 + psi2 * beta2 reshaped to the dictionaries' grid.
ImagePlane synthesize(const Dictionary& psi1, const Eigen::VectorXd& beta1,
                      const Dictionary& psi2, const Eigen::VectorXd& beta2);

}  // namespace ahfsr
