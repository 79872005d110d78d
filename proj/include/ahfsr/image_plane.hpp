#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ahfsr {

/// Single-channel raster of real intensities, row-major.
///
/// Nominal range is [0,1]; residual planes produced inside the
/// super-resolution loop are signed and may leave that range.
class ImagePlane {
 public:
  ImagePlane() = default;
  ImagePlane(int rows, int cols, double fill = 0.0);
  ImagePlane(int rows, int cols, std::vector<double> data);

  /// Reshape a row-major vector (pixel (r,c) at index r*cols + c).
  static ImagePlane from_vector(int rows, int cols, const Eigen::VectorXd& v);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool same_shape(const ImagePlane& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double& operator()(int r, int c) { return data_[index(r, c)]; }
  double operator()(int r, int c) const { return data_[index(r, c)]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Eigen::Map<const Eigen::VectorXd> as_vector() const {
    return {data_.data(), static_cast<Eigen::Index>(data_.size())};
  }
  Eigen::Map<Eigen::VectorXd> as_vector() {
    return {data_.data(), static_cast<Eigen::Index>(data_.size())};
  }

  bool all_finite() const noexcept;

  ImagePlane& operator+=(const ImagePlane& rhs);
  ImagePlane& operator-=(const ImagePlane& rhs);

 private:
  std::size_t index(int r, int c) const noexcept {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

ImagePlane operator+(ImagePlane lhs, const ImagePlane& rhs);
ImagePlane operator-(ImagePlane lhs, const ImagePlane& rhs);

/// Clamp every sample to [lo, hi].
ImagePlane clamp(ImagePlane plane, double lo = 0.0, double hi = 1.0);

struct RgbImage {
  ImagePlane r, g, b;
};

struct YcbcrImage {
  ImagePlane y, cb, cr;
};

/// Raster of exact 0/1 values.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int rows, int cols, std::uint8_t fill = 0);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  std::uint8_t operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  void set(int r, int c, bool on) {
    data_[static_cast<std::size_t>(r) * cols_ + c] = on ? 1 : 0;
  }

  std::size_t count() const noexcept;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace ahfsr
