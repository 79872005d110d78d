#include "ahfsr/ahf_dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ahfsr/errors.hpp"

namespace ahfsr {

namespace {

// Evaluates every atom at pixel coordinates x_i = (i + shift) / denom_rows,
// y_j = (j + shift) / denom_cols for 1-based i, j.
Dictionary build_on_grid(const AhfBasisSpec& spec, int rows, int cols,
                         double shift, double denom_rows, double denom_cols) {
  spec.validate();
  if (rows < 1 || cols < 1) {
    throw InvalidParameter("dictionary grid must be at least 1x1, got " +
                           std::to_string(rows) + "x" + std::to_string(cols));
  }
  Dictionary d;
  d.grid_rows = rows;
  d.grid_cols = cols;
  d.spec = spec;
  d.values.resize(static_cast<Eigen::Index>(rows) * cols, spec.size());

  const int q = spec.offset_count;
  for (int t = 0; t < spec.angle_count(); ++t) {
    const double ct = std::cos(spec.angles[t]);
    const double st = std::sin(spec.angles[t]);
    for (int j = 0; j < q; ++j) {
      const Eigen::Index col = d.column(t, j);
      const double c = spec.offset(j);
      for (int r = 0; r < rows; ++r) {
        const double x = (r + 1 + shift) / denom_rows;
        for (int k = 0; k < cols; ++k) {
          const double y = (k + 1 + shift) / denom_cols;
          d.values(static_cast<Eigen::Index>(r) * cols + k, col) =
              eval_ahf(ct * x + st * y + c, spec.xi);
        }
      }
    }
  }
  return d;
}

}  // namespace

double eval_ahf(double x, double xi) {
  if (!(xi > 0.0)) {
    throw InvalidParameter("AHF smoothness xi must be > 0, got " + std::to_string(xi));
  }
  return 0.5 + std::atan(x / xi) * std::numbers::inv_pi;
}

AhfBasisSpec AhfBasisSpec::uniform(double xi, int angle_count, int offset_count) {
  if (angle_count < 1) throw InvalidParameter("angle count must be >= 1");
  AhfBasisSpec spec;
  spec.xi = xi;
  spec.offset_count = offset_count;
  spec.angles.reserve(angle_count);
  for (int t = 0; t < angle_count; ++t) {
    spec.angles.push_back(2.0 * std::numbers::pi * t / angle_count);
  }
  spec.validate();
  return spec;
}

void AhfBasisSpec::validate() const {
  if (!(xi > 0.0)) throw InvalidParameter("AHF smoothness xi must be > 0");
  if (angles.empty()) throw InvalidParameter("AHF basis needs at least one angle");
  if (offset_count < 1) throw InvalidParameter("AHF offset count must be >= 1");
  std::vector<double> sorted = angles;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidParameter("AHF angles must be distinct");
  }
  for (double a : angles) {
    if (!(a >= 0.0 && a < 2.0 * std::numbers::pi)) {
      throw InvalidParameter("AHF angles must lie in [0, 2*pi)");
    }
  }
}

Dictionary build_dictionary(const AhfBasisSpec& spec, int grid_rows, int grid_cols) {
  return build_on_grid(spec, grid_rows, grid_cols, 0.0, grid_rows, grid_cols);
}

Dictionary build_fine_dictionary(const AhfBasisSpec& spec, int coarse_rows,
                                 int coarse_cols, int scale,
                                 GridAlignment alignment) {
  if (scale < 1) throw InvalidParameter("scale must be >= 1");
  const int rows = coarse_rows * scale;
  const int cols = coarse_cols * scale;
  const double shift =
      alignment == GridAlignment::kCenterAligned ? (scale - 1) / 2.0 : 0.0;
  return build_on_grid(spec, rows, cols, shift, rows, cols);
}

ImagePlane synthesize(const Dictionary& psi1, const Eigen::VectorXd& beta1,
                      const Dictionary& psi2, const Eigen::VectorXd& beta2) {
  if (psi1.grid_rows != psi2.grid_rows || psi1.grid_cols != psi2.grid_cols) {
    throw ShapeError("synthesize: dictionaries are on different grids");
  }
  if (beta1.size() != psi1.atoms() || beta2.size() != psi2.atoms()) {
    throw ShapeError("synthesize: coefficient length does not match atom count");
  }
  const Eigen::VectorXd v = psi1.values * beta1 + psi2.values * beta2;
  return ImagePlane::from_vector(psi1.grid_rows, psi1.grid_cols, v);
}

}  // namespace ahfsr
