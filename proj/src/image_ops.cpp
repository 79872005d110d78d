#include "ahfsr/image_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ahfsr/errors.hpp"

namespace ahfsr {

namespace {

struct Tap {
  int index;
  double weight;
};

using Taps = std::vector<std::vector<Tap>>;

// Per destination index, the (replicate-clamped) source taps and normalized
// weights of a 1-D resampling pass.
Taps cubic_taps(int src, int dst) {
  const double scale = static_cast<double>(dst) / src;
  const bool shrink = scale < 1.0;
  const double width = shrink ? 4.0 / scale : 4.0;
  const int span = static_cast<int>(std::ceil(width)) + 2;

  Taps taps(dst);
  for (int i = 0; i < dst; ++i) {
    const double u = (i + 0.5) / scale - 0.5;
    const int left = static_cast<int>(std::floor(u - width / 2.0));
    double total = 0.0;
    for (int p = 0; p < span; ++p) {
      const int j = left + p;
      const double d = u - j;
      const double w = shrink ? scale * cubic_kernel(scale * d) : cubic_kernel(d);
      if (w == 0.0) continue;
      taps[i].push_back({std::clamp(j, 0, src - 1), w});
      total += w;
    }
    for (Tap& t : taps[i]) t.weight /= total;
  }
  return taps;
}

ImagePlane resample_rows(const ImagePlane& src, const Taps& taps) {
  const int dst_rows = static_cast<int>(taps.size());
  ImagePlane out(dst_rows, src.cols());
  for (int r = 0; r < dst_rows; ++r) {
    for (int c = 0; c < src.cols(); ++c) {
      double acc = 0.0;
      for (const Tap& t : taps[r]) acc += t.weight * src(t.index, c);
      out(r, c) = acc;
    }
  }
  return out;
}

ImagePlane resample_cols(const ImagePlane& src, const Taps& taps) {
  const int dst_cols = static_cast<int>(taps.size());
  ImagePlane out(src.rows(), dst_cols);
  for (int r = 0; r < src.rows(); ++r) {
    for (int c = 0; c < dst_cols; ++c) {
      double acc = 0.0;
      for (const Tap& t : taps[c]) acc += t.weight * src(r, t.index);
      out(r, c) = acc;
    }
  }
  return out;
}

void require_dims(int rows, int cols, const char* what) {
  if (rows < 1 || cols < 1) {
    throw InvalidParameter(std::string(what) + ": dimensions must be >= 1, got " +
                           std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_same(const ImagePlane& a, const ImagePlane& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(what) + ": shape mismatch " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

// Rows map (R,G,B) to (Y,Cb,Cr) before the offset is added.
Eigen::Matrix3d forward_matrix(YcbcrRange range) {
  Eigen::Matrix3d m;
  if (range == YcbcrRange::kStudio) {
    m << 65.481, 128.553, 24.966,
        -37.797, -74.203, 112.0,
        112.0, -93.786, -18.214;
    m /= 255.0;
  } else {
    m << 0.299, 0.587, 0.114,
        -0.168736, -0.331264, 0.5,
        0.5, -0.418688, -0.081312;
  }
  return m;
}

Eigen::Vector3d offset(YcbcrRange range) {
  if (range == YcbcrRange::kStudio) return {16.0 / 255.0, 128.0 / 255.0, 128.0 / 255.0};
  return {0.0, 128.0 / 255.0, 128.0 / 255.0};
}

}  // namespace

double cubic_kernel(double x) noexcept {
  constexpr double a = -0.5;
  const double ax = std::abs(x);
  if (ax <= 1.0) return ((a + 2.0) * ax - (a + 3.0)) * ax * ax + 1.0;
  if (ax < 2.0) return ((a * ax - 5.0 * a) * ax + 8.0 * a) * ax - 4.0 * a;
  return 0.0;
}

ImagePlane bicubic_resize(const ImagePlane& src, int dst_rows, int dst_cols) {
  require_dims(dst_rows, dst_cols, "bicubic_resize");
  require_dims(src.rows(), src.cols(), "bicubic_resize source");
  const ImagePlane tmp = resample_rows(src, cubic_taps(src.rows(), dst_rows));
  return resample_cols(tmp, cubic_taps(src.cols(), dst_cols));
}

ImagePlane nearest_resize(const ImagePlane& src, int dst_rows, int dst_cols) {
  require_dims(dst_rows, dst_cols, "nearest_resize");
  require_dims(src.rows(), src.cols(), "nearest_resize source");
  auto source_index = [](int i, int src_n, int dst_n) {
    const int j = static_cast<int>(std::floor((i + 0.5) * src_n / dst_n));
    return std::clamp(j, 0, src_n - 1);
  };
  ImagePlane out(dst_rows, dst_cols);
  for (int r = 0; r < dst_rows; ++r) {
    const int sr = source_index(r, src.rows(), dst_rows);
    for (int c = 0; c < dst_cols; ++c) {
      out(r, c) = src(sr, source_index(c, src.cols(), dst_cols));
    }
  }
  return out;
}

ImagePlane gaussian_kernel(int size, double sigma) {
  if (size < 1 || size % 2 == 0) {
    throw InvalidParameter("gaussian_kernel: size must be odd and positive");
  }
  if (!(sigma > 0.0)) throw InvalidParameter("gaussian_kernel: sigma must be > 0");
  const int half = size / 2;
  ImagePlane k(size, size);
  double total = 0.0;
  for (int y = -half; y <= half; ++y) {
    for (int x = -half; x <= half; ++x) {
      const double v = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
      k(y + half, x + half) = v;
      total += v;
    }
  }
  for (double& v : k.data()) v /= total;
  return k;
}

ImagePlane convolve(const ImagePlane& img, const ImagePlane& kernel) {
  if (kernel.rows() % 2 == 0 || kernel.cols() % 2 == 0) {
    throw ShapeError("convolve: kernel sides must be odd");
  }
  const int hr = kernel.rows() / 2;
  const int hc = kernel.cols() / 2;
  ImagePlane out(img.rows(), img.cols());
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      double acc = 0.0;
      for (int dr = -hr; dr <= hr; ++dr) {
        const int sr = std::clamp(r - dr, 0, img.rows() - 1);
        for (int dc = -hc; dc <= hc; ++dc) {
          const int sc = std::clamp(c - dc, 0, img.cols() - 1);
          acc += kernel(dr + hr, dc + hc) * img(sr, sc);
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

ImagePlane gradient_magnitude(const ImagePlane& img) {
  const int rows = img.rows();
  const int cols = img.cols();
  auto diff = [](double lo, double hi, int span) { return (hi - lo) / span; };
  ImagePlane g(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double gy = 0.0;
      if (rows > 1) {
        const int lo = std::max(r - 1, 0);
        const int hi = std::min(r + 1, rows - 1);
        gy = diff(img(lo, c), img(hi, c), hi - lo);
      }
      double gx = 0.0;
      if (cols > 1) {
        const int lo = std::max(c - 1, 0);
        const int hi = std::min(c + 1, cols - 1);
        gx = diff(img(r, lo), img(r, hi), hi - lo);
      }
      g(r, c) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return g;
}

BinaryMask ring_mask(const ImagePlane& upsampled, double threshold) {
  if (std::isnan(threshold) || threshold < 0.0) {
    throw InvalidParameter("ring_mask: threshold must be >= 0");
  }
  const ImagePlane g = gradient_magnitude(upsampled);
  BinaryMask mask(g.rows(), g.cols());
  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) mask.set(r, c, g(r, c) > threshold);
  }
  return mask;
}

ImagePlane apply_mask(const ImagePlane& plane, const BinaryMask& mask) {
  if (plane.rows() != mask.rows() || plane.cols() != mask.cols()) {
    throw ShapeError("apply_mask: mask shape does not match plane");
  }
  ImagePlane out(plane.rows(), plane.cols());
  for (int r = 0; r < plane.rows(); ++r) {
    for (int c = 0; c < plane.cols(); ++c) {
      out(r, c) = mask(r, c) ? plane(r, c) : 0.0;
    }
  }
  return out;
}

YcbcrImage rgb_to_ycbcr(const RgbImage& rgb, YcbcrRange range) {
  require_same(rgb.r, rgb.g, "rgb_to_ycbcr");
  require_same(rgb.r, rgb.b, "rgb_to_ycbcr");
  const Eigen::Matrix3d m = forward_matrix(range);
  const Eigen::Vector3d off = offset(range);
  YcbcrImage out{ImagePlane(rgb.r.rows(), rgb.r.cols()),
                 ImagePlane(rgb.r.rows(), rgb.r.cols()),
                 ImagePlane(rgb.r.rows(), rgb.r.cols())};
  for (std::size_t i = 0; i < rgb.r.size(); ++i) {
    const Eigen::Vector3d v =
        m * Eigen::Vector3d(rgb.r.data()[i], rgb.g.data()[i], rgb.b.data()[i]) + off;
    out.y.data()[i] = v[0];
    out.cb.data()[i] = v[1];
    out.cr.data()[i] = v[2];
  }
  return out;
}

RgbImage ycbcr_to_rgb(const YcbcrImage& ycc, YcbcrRange range) {
  require_same(ycc.y, ycc.cb, "ycbcr_to_rgb");
  require_same(ycc.y, ycc.cr, "ycbcr_to_rgb");
  const Eigen::Matrix3d inv = forward_matrix(range).inverse();
  const Eigen::Vector3d off = offset(range);
  RgbImage out{ImagePlane(ycc.y.rows(), ycc.y.cols()),
               ImagePlane(ycc.y.rows(), ycc.y.cols()),
               ImagePlane(ycc.y.rows(), ycc.y.cols())};
  for (std::size_t i = 0; i < ycc.y.size(); ++i) {
    const Eigen::Vector3d v =
        inv * (Eigen::Vector3d(ycc.y.data()[i], ycc.cb.data()[i], ycc.cr.data()[i]) - off);
    out.r.data()[i] = v[0];
    out.g.data()[i] = v[1];
    out.b.data()[i] = v[2];
  }
  return out;
}

double rmse(const ImagePlane& a, const ImagePlane& b) {
  require_same(a, b, "rmse");
  if (a.size() == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace ahfsr
