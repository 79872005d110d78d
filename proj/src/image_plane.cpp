#include "ahfsr/image_plane.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ahfsr/errors.hpp"

namespace ahfsr {

namespace {

void check_dims(int rows, int cols) {
  if (rows < 0 || cols < 0) {
    throw ShapeError("negative image dimensions " + std::to_string(rows) +
                     "x" + std::to_string(cols));
  }
}

void check_same(const ImagePlane& a, const ImagePlane& b) {
  if (!a.same_shape(b)) {
    throw ShapeError("plane shape mismatch: " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

ImagePlane::ImagePlane(int rows, int cols, double fill)
    : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  data_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

ImagePlane::ImagePlane(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_dims(rows, cols);
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw ShapeError("data length " + std::to_string(data_.size()) +
                     " does not match " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
}

ImagePlane ImagePlane::from_vector(int rows, int cols, const Eigen::VectorXd& v) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw ShapeError("vector length " + std::to_string(v.size()) +
                     " does not match " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  return ImagePlane(rows, cols, std::vector<double>(v.data(), v.data() + v.size()));
}

bool ImagePlane::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

ImagePlane& ImagePlane::operator+=(const ImagePlane& rhs) {
  check_same(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ImagePlane& ImagePlane::operator-=(const ImagePlane& rhs) {
  check_same(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ImagePlane operator+(ImagePlane lhs, const ImagePlane& rhs) { return lhs += rhs; }
ImagePlane operator-(ImagePlane lhs, const ImagePlane& rhs) { return lhs -= rhs; }

ImagePlane clamp(ImagePlane plane, double lo, double hi) {
  for (double& v : plane.data()) v = std::clamp(v, lo, hi);
  return plane;
}

BinaryMask::BinaryMask(int rows, int cols, std::uint8_t fill)
    : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  data_.assign(static_cast<std::size_t>(rows) * cols, fill ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), 1));
}

}  // namespace ahfsr
