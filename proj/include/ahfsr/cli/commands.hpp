#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "ahfsr/cli/image_io.hpp"
#include "ahfsr/sr_core.hpp"
#include "ahfsr/upscaler.hpp"

namespace ahfsr::cli {

/// Bad command line or option value.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitNumerical = 4,
};

struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path output;
  SrConfig sr;
  int threads = 0;  // 0: hardware concurrency
  std::optional<std::filesystem::path> trace_path;

  /// Throws UsageError for empty paths or out-of-range overrides.
  void validate() const;
};

/// Reads `input`, runs the pipeline on the gray plane (or on Y with Cb/Cr
/// bicubic-resized for RGB) and writes `output`. Returns the pipeline result
/// of the processed plane.
UpscaleResult cmd_upscale(const RunConfig& config);

enum class EvalChannel { kAuto, kY, kGray, kR, kG, kB };

struct EvalReport {
  double rmse = 0.0;  // on the 0-255 scale
  int rows = 0;
  int cols = 0;
  std::string channel;
};

/// Plane compared by eval: luminance for RGB under kAuto, the only plane for
/// gray images.
ImagePlane eval_plane(const RasterImage& image, EvalChannel channel,
                      bool full_swing, std::string* name = nullptr);

EvalReport cmd_eval(const std::filesystem::path& reference,
                    const std::filesystem::path& test, EvalChannel channel,
                    bool full_swing);

enum class BaselineMethod { kNearest, kBicubic };

/// Resizes every channel by `scale` with the chosen resampler.
void cmd_baseline(const std::filesystem::path& input,
                  const std::filesystem::path& output, int scale,
                  BaselineMethod method);

/// Command-line entry point. Returns one of ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ahfsr::cli
