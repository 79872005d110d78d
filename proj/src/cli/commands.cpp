#include "ahfsr/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ahfsr/errors.hpp"
#include "ahfsr/image_ops.hpp"

namespace ahfsr::cli {

void RunConfig::validate() const {
  if (input.empty()) throw UsageError("--input is required");
  if (output.empty()) throw UsageError("--output is required");
  if (threads < 0) throw UsageError("--threads must be >= 0");
  try {
    sr.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
}

namespace {

void write_trace(const std::filesystem::path& path, const UpscaleResult& result) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string() + ": cannot open trace file");
  for (const PatchReport& p : result.patches) {
    nlohmann::json line = {
        {"origin", {{"row", p.origin.row}, {"col", p.origin.col}}},
        {"residual_norms", p.trace.residual_norms},
        {"admm_iterations", p.trace.admm_iterations},
        {"iterations_run", p.trace.iterations_run},
    };
    out << line.dump() << '\n';
  }
  if (!out) throw IoError(path.string() + ": trace write failed");
}

}  // namespace

UpscaleResult cmd_upscale(const RunConfig& config) {
  config.validate();
  const RasterImage input = read_image(config.input);
  const int s = config.sr.scale;

  UpscaleResult result;
  RasterImage output;
  if (input.channels == 1) {
    result = upscale_plane(channel_plane(input, 0), config.sr, config.threads);
    output = to_raster(result.output);
  } else {
    const YcbcrImage ycc = rgb_to_ycbcr(rgb_planes(input));
    result = upscale_plane(ycc.y, config.sr, config.threads);
    const int rows = s * input.rows;
    const int cols = s * input.cols;
    const YcbcrImage up{result.output, bicubic_resize(ycc.cb, rows, cols),
                        bicubic_resize(ycc.cr, rows, cols)};
    output = to_raster(ycbcr_to_rgb(up));
  }
  write_image(config.output, output);
  if (config.trace_path) write_trace(*config.trace_path, result);
  return result;
}

ImagePlane eval_plane(const RasterImage& image, EvalChannel channel,
                      bool full_swing, std::string* name) {
  auto named = [&](const char* n, ImagePlane plane) {
    if (name) *name = n;
    return plane;
  };
  if (image.channels == 1) {
    switch (channel) {
      case EvalChannel::kAuto:
      case EvalChannel::kGray:
      case EvalChannel::kY:
        return named("gray", channel_plane(image, 0));
      default:
        throw UsageError("r/g/b channels need an RGB image");
    }
  }
  switch (channel) {
    case EvalChannel::kAuto:
    case EvalChannel::kY: {
      const YcbcrRange range = full_swing ? YcbcrRange::kFull : YcbcrRange::kStudio;
      return named("y", rgb_to_ycbcr(rgb_planes(image), range).y);
    }
    case EvalChannel::kR:
      return named("r", channel_plane(image, 0));
    case EvalChannel::kG:
      return named("g", channel_plane(image, 1));
    case EvalChannel::kB:
      return named("b", channel_plane(image, 2));
    case EvalChannel::kGray:
      break;
  }
  throw UsageError("gray channel needs a grayscale image");
}

EvalReport cmd_eval(const std::filesystem::path& reference,
                    const std::filesystem::path& test, EvalChannel channel,
                    bool full_swing) {
  const RasterImage ref = read_image(reference);
  const RasterImage tst = read_image(test);
  if (ref.rows != tst.rows || ref.cols != tst.cols || ref.channels != tst.channels) {
    throw UsageError("eval: images differ in size or channel count");
  }
  EvalReport report;
  const ImagePlane a = eval_plane(ref, channel, full_swing, &report.channel);
  const ImagePlane b = eval_plane(tst, channel, full_swing);
  report.rmse = 255.0 * rmse(a, b);
  report.rows = ref.rows;
  report.cols = ref.cols;
  return report;
}

void cmd_baseline(const std::filesystem::path& input,
                  const std::filesystem::path& output, int scale,
                  BaselineMethod method) {
  if (scale < 2) throw UsageError("--scale must be >= 2");
  const RasterImage in = read_image(input);
  const int rows = scale * in.rows;
  const int cols = scale * in.cols;
  auto resize = [&](const ImagePlane& p) {
    return method == BaselineMethod::kNearest ? nearest_resize(p, rows, cols)
                                              : bicubic_resize(p, rows, cols);
  };
  if (in.channels == 1) {
    write_image(output, to_raster(resize(channel_plane(in, 0))));
  } else {
    const RgbImage rgb = rgb_planes(in);
    write_image(output, to_raster(RgbImage{resize(rgb.r), resize(rgb.g), resize(rgb.b)}));
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-image super-resolution with approximated Heaviside functions"};
  app.require_subcommand(1);

  RunConfig up;
  bool up_mask = false;
  auto* upscale = app.add_subcommand("upscale", "Super-resolve an image");
  upscale->add_option("--input", up.input, "Input image (PNG, PGM, PPM)")->required();
  upscale->add_option("--output", up.output, "Output image")->required();
  upscale->add_option("--scale", up.sr.scale, "Upscaling factor (>= 2)")->required();
  upscale->add_flag("--mask", up_mask, "Suppress ring artifacts on flat regions");
  upscale->add_option("--lambda1", up.sr.solver.lambda1, "Ridge weight, smooth class");
  upscale->add_option("--lambda2", up.sr.solver.lambda2, "L1 weight, edge class");
  upscale->add_option("--rho", up.sr.solver.rho, "ADMM penalty");
  upscale->add_option("--max-iters", up.sr.solver.max_iters, "ADMM iteration budget");
  upscale->add_option("--xi1", up.sr.xi1, "Smooth-class AHF width");
  upscale->add_option("--xi2", up.sr.xi2, "Edge-class AHF width");
  upscale->add_option("--tau", up.sr.tau, "Residual refinement rounds");
  upscale->add_option("--patch", up.sr.patch.size, "Patch side in input pixels");
  upscale->add_option("--overlap", up.sr.patch.overlap, "Patch overlap in input pixels");
  upscale->add_option("--angles", up.sr.angle_count, "Number of AHF directions");
  upscale->add_option("--threshold", up.sr.mask_threshold, "Ring mask gradient threshold");
  upscale->add_option("--threads", up.threads, "Worker threads (0: all cores)");
  bool center_grid = false;
  upscale->add_flag("--center-grid", center_grid, "Center-aligned fine sampling grid");
  std::string trace;
  upscale->add_option("--trace", trace, "Write per-patch JSON lines here");

  std::string ref_path, test_path, channel_name = "auto";
  bool full_swing = false;
  auto* eval = app.add_subcommand("eval", "RMSE between two images (0-255 scale)");
  eval->add_option("--ref", ref_path, "Ground-truth image")->required();
  eval->add_option("--test", test_path, "Image to score")->required();
  eval->add_option("--channel", channel_name, "y, gray, r, g or b")
      ->check(CLI::IsMember({"auto", "y", "gray", "r", "g", "b"}));
  eval->add_flag("--full-swing", full_swing, "Full-range luma instead of studio swing");

  std::string base_in, base_out, method_name;
  int base_scale = 0;
  auto* baseline = app.add_subcommand("baseline", "Nearest or bicubic upscaling");
  baseline->add_option("--input", base_in, "Input image")->required();
  baseline->add_option("--output", base_out, "Output image")->required();
  baseline->add_option("--scale", base_scale, "Upscaling factor (>= 2)")->required();
  baseline->add_option("--method", method_name, "nearest or bicubic")
      ->required()
      ->check(CLI::IsMember({"nearest", "bicubic"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (upscale->parsed()) {
      up.sr.mask_enabled = up_mask;
      if (center_grid) up.sr.alignment = GridAlignment::kCenterAligned;
      if (!trace.empty()) up.trace_path = trace;
      const UpscaleResult result = cmd_upscale(up);
      for (const std::string& w : result.warnings) err << "warning: " << w << '\n';
    } else if (eval->parsed()) {
      EvalChannel ch = EvalChannel::kAuto;
      if (channel_name == "y") ch = EvalChannel::kY;
      if (channel_name == "gray") ch = EvalChannel::kGray;
      if (channel_name == "r") ch = EvalChannel::kR;
      if (channel_name == "g") ch = EvalChannel::kG;
      if (channel_name == "b") ch = EvalChannel::kB;
      const EvalReport report = cmd_eval(ref_path, test_path, ch, full_swing);
      char line[64];
      std::snprintf(line, sizeof line, "RMSE %.2f", report.rmse);
      out << line << '\n';
    } else if (baseline->parsed()) {
      cmd_baseline(base_in, base_out, base_scale,
                   method_name == "nearest" ? BaselineMethod::kNearest
                                            : BaselineMethod::kBicubic);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const SingularSystem& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace ahfsr::cli
