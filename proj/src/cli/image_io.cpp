#include "ahfsr/cli/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include <png.h>

#include "ahfsr/errors.hpp"

namespace ahfsr::cli {

namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

RasterImage read_png(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw IoError(path.string() + ": " + png.message);
  }
  RasterImage img;
  img.rows = static_cast<int>(png.height);
  img.cols = static_cast<int>(png.width);
  img.channels = (png.format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
  png.format = img.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  img.samples.resize(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, img.samples.data(), 0, nullptr)) {
    std::string msg = png.message;
    png_image_free(&png);
    throw IoError(path.string() + ": " + msg);
  }
  return img;
}

void write_png(const std::filesystem::path& path, const RasterImage& img) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(img.cols);
  png.height = static_cast<png_uint_32>(img.rows);
  png.format = img.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.c_str(), 0, img.samples.data(), 0, nullptr)) {
    throw IoError(path.string() + ": " + png.message);
  }
}

// Netpbm header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

int parse_positive(const std::string& tok, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used == tok.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw IoError(path.string() + ": malformed netpbm header");
}

RasterImage read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open");
  const std::string magic = next_token(in);
  if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6") {
    throw IoError(path.string() + ": unsupported netpbm type '" + magic + "'");
  }
  RasterImage img;
  img.cols = parse_positive(next_token(in), path);
  img.rows = parse_positive(next_token(in), path);
  const int maxval = parse_positive(next_token(in), path);
  if (maxval > 255) throw IoError(path.string() + ": only 8-bit netpbm is supported");
  img.channels = (magic == "P3" || magic == "P6") ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(img.rows) * img.cols * img.channels;
  img.samples.resize(count);

  if (magic == "P5" || magic == "P6") {
    in.read(reinterpret_cast<char*>(img.samples.data()),
            static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count) {
      throw IoError(path.string() + ": truncated pixel data");
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const std::string tok = next_token(in);
      if (tok.empty()) throw IoError(path.string() + ": truncated pixel data");
      const int v = std::stoi(tok);
      if (v < 0 || v > maxval) throw IoError(path.string() + ": sample out of range");
      img.samples[i] = static_cast<std::uint8_t>(v);
    }
  }
  if (maxval != 255) {
    for (auto& v : img.samples) {
      v = static_cast<std::uint8_t>(std::lround(v * 255.0 / maxval));
    }
  }
  return img;
}

void write_pnm(const std::filesystem::path& path, const RasterImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << (img.channels == 3 ? "P6" : "P5") << '\n'
      << img.cols << ' ' << img.rows << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.samples.data()),
            static_cast<std::streamsize>(img.samples.size()));
  if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace

RasterImage read_image(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw IoError(path.string() + ": no such file");
  }
  const std::string ext = lower_extension(path);
  if (ext == ".png") return read_png(path);
  if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") return read_pnm(path);
  throw IoError(path.string() + ": unsupported extension '" + ext + "'");
}

void write_image(const std::filesystem::path& path, const RasterImage& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw IoError(path.string() + ": only gray or RGB images can be written");
  }
  const std::string ext = lower_extension(path);
  if (ext == ".png") return write_png(path, image);
  if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") return write_pnm(path, image);
  throw IoError(path.string() + ": unsupported extension '" + ext + "'");
}

std::uint8_t quantize_sample(double v) noexcept {
  if (!(v > 0.0)) return 0;
  if (v >= 1.0) return 255;
  return static_cast<std::uint8_t>(std::round(v * 255.0));
}

ImagePlane channel_plane(const RasterImage& image, int channel) {
  if (channel < 0 || channel >= image.channels) {
    throw ShapeError("channel " + std::to_string(channel) + " not present");
  }
  ImagePlane plane(image.rows, image.cols);
  for (int r = 0; r < image.rows; ++r) {
    for (int c = 0; c < image.cols; ++c) plane(r, c) = image.at(r, c, channel) / 255.0;
  }
  return plane;
}

RgbImage rgb_planes(const RasterImage& image) {
  if (image.channels != 3) throw ShapeError("image is not RGB");
  return {channel_plane(image, 0), channel_plane(image, 1), channel_plane(image, 2)};
}

RasterImage to_raster(const ImagePlane& gray) {
  RasterImage img{gray.rows(), gray.cols(), 1, {}};
  img.samples.reserve(gray.size());
  for (double v : gray.data()) img.samples.push_back(quantize_sample(v));
  return img;
}

RasterImage to_raster(const RgbImage& rgb) {
  if (!rgb.r.same_shape(rgb.g) || !rgb.r.same_shape(rgb.b)) {
    throw ShapeError("RGB planes differ in shape");
  }
  RasterImage img{rgb.r.rows(), rgb.r.cols(), 3, {}};
  img.samples.reserve(rgb.r.size() * 3);
  for (std::size_t i = 0; i < rgb.r.size(); ++i) {
    img.samples.push_back(quantize_sample(rgb.r.data()[i]));
    img.samples.push_back(quantize_sample(rgb.g.data()[i]));
    img.samples.push_back(quantize_sample(rgb.b.data()[i]));
  }
  return img;
}

}  // namespace ahfsr::cli
