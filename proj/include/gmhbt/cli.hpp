#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmhbt/bench.hpp"
#include "gmhbt/design.hpp"
#include "gmhbt/error.hpp"
#include "gmhbt/filtering.hpp"
#include "gmhbt/kernel.hpp"
#include "gmhbt/noise.hpp"
#include "gmhbt/pgm.hpp"
#include "gmhbt/synthetic.hpp"

namespace gmhbt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Flag values for one invocation. Design fields mirror DesignSpec.
struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string kernel_path;
  std::string filter = "proposed";
  double log_sigma = 0.0;  // 0 selects the size-based default
  DesignSpec spec;
  double support_w = 0.0;
  double sigma_g = 0.0;
  std::string denom_form = "butterworth";
  std::string boundary = "replicate";
  std::string quantize = "absolute";
  double noise_sigma = 20.0;
  std::uint64_t seed = 1;
  double fraction = 0.5;
  double lambda = 1.0;
  std::vector<std::string> images;
  bool synthetic = false;
  std::vector<int> sizes{5};
  std::vector<double> sigmas{20.0};
  std::string format = "csv";
  unsigned threads = 1;
};

/// Writes through a sibling temporary and renames, so a failed run never
/// leaves a partial file at `path`.
inline void atomic_write(const std::filesystem::path& path,
                         const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw IoFailure("write failed: " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoFailure("cannot move output into place: " + path.string());
  }
}

namespace detail {

inline void add_design_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--size", cfg.spec.size, "Odd kernel side length")
      ->capture_default_str();
  app->add_option("--sigma-w", cfg.spec.sigma_w, "tanh slope parameter")
      ->capture_default_str();
  app->add_option("--support-w", cfg.support_w,
                  "Region-of-support half width (default (size-1)/2)");
  app->add_option("--sigma-g", cfg.sigma_g,
                  "Gaussian envelope sigma (default support/2)");
  app->add_option("--omega-c", cfg.spec.omega_c, "Cutoff frequency in (0, pi)")
      ->capture_default_str();
  app->add_option("--response-order", cfg.spec.response_order,
                  "Exponent of the high-pass response")
      ->capture_default_str();
  app->add_option("--denom-form", cfg.denom_form, "butterworth | literal")
      ->capture_default_str();
  app->add_option("--grid-m", cfg.spec.grid_m, "Frequency samples along w1")
      ->capture_default_str();
  app->add_option("--grid-k", cfg.spec.grid_k, "Frequency samples along w2")
      ->capture_default_str();
  app->add_option("--weight-pass", cfg.spec.weight_pass)->capture_default_str();
  app->add_option("--weight-stop", cfg.spec.weight_stop)->capture_default_str();
  app->add_option("--dc-gain", cfg.spec.dc_gain, "Target sum of coefficients")
      ->capture_default_str();
}

inline void add_filter_flags(CLI::App* app, RunConfig& cfg) {
  add_design_flags(app, cfg);
  app->add_option("-i,--input", cfg.input, "Input PGM (P5)")->required();
  app->add_option("-o,--output", cfg.output, "Output PGM")->required();
  app->add_option("-k,--kernel", cfg.kernel_path,
                  "Kernel text file; designed in-process when omitted");
  app->add_option("--filter", cfg.filter, "proposed | log")->capture_default_str();
  app->add_option("--log-sigma", cfg.log_sigma, "LoG scale (default size/6)");
  app->add_option("--boundary", cfg.boundary, "replicate | zero")
      ->capture_default_str();
}

// Resolves optional flags into the spec and checks it.
inline DesignSpec resolved_spec(const RunConfig& cfg, const CLI::App* app) {
  DesignSpec spec = cfg.spec;
  if (app->count("--support-w")) spec.support_w = cfg.support_w;
  if (app->count("--sigma-g")) spec.sigma_g = cfg.sigma_g;
  spec.denom_form = parse_denom_form(cfg.denom_form);
  spec.validate();
  return spec;
}

inline Kernel2D select_kernel(const RunConfig& cfg, const CLI::App* app) {
  if (!cfg.kernel_path.empty()) return load_kernel(cfg.kernel_path);
  const DesignSpec spec = resolved_spec(cfg, app);
  if (cfg.filter == "proposed") return design_gmhbt_hp(spec);
  if (cfg.filter == "log") {
    const double sigma =
        app->count("--log-sigma") ? cfg.log_sigma : default_log_sigma(spec.size);
    return log_kernel(spec.size, sigma);
  }
  throw InvalidSpec("unknown filter '" + cfg.filter + "'");
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

inline int cmd_design(const RunConfig& cfg, const CLI::App* app,
                      std::ostream& out) {
  const DesignSpec spec = detail::resolved_spec(cfg, app);
  const DesignResult result = design_gmhbt_hp_detailed(spec);
  std::ostringstream text;
  write_kernel(result.kernel, text);
  atomic_write(cfg.output, text.str());
  char line[160];
  std::snprintf(line, sizeof line,
                "unique coefficients P = %d\ncondition estimate = %.6e\n"
                "dc sum = %.6e\n",
                spec.unique_count(), result.condition, result.kernel.sum());
  out << line;
  return kExitOk;
}

inline int cmd_apply(const RunConfig& cfg, const CLI::App* app, std::ostream&) {
  const QuantizeMode mode = parse_quantize_mode(cfg.quantize);
  const BoundaryMode boundary = parse_boundary_mode(cfg.boundary);
  const Kernel2D kernel = detail::select_kernel(cfg, app);
  const GrayImage img = load_pgm(cfg.input);
  atomic_write(cfg.output, encode_pgm(quantize(convolve2d(img, kernel, boundary), mode)));
  return kExitOk;
}

inline int cmd_edges(const RunConfig& cfg, const CLI::App* app, std::ostream&) {
  if (!(cfg.fraction >= 0.0 && cfg.fraction <= 1.0)) {
    throw InvalidSpec("fraction must lie in [0, 1]");
  }
  const BoundaryMode boundary = parse_boundary_mode(cfg.boundary);
  const Kernel2D kernel = detail::select_kernel(cfg, app);
  const GrayImage img = load_pgm(cfg.input);
  atomic_write(cfg.output,
               encode_pgm(threshold_edges(convolve2d(img, kernel, boundary),
                                          cfg.fraction)));
  return kExitOk;
}

inline int cmd_sharpen(const RunConfig& cfg, const CLI::App* app, std::ostream&) {
  if (!(cfg.lambda >= 0.0)) throw InvalidSpec("lambda must be >= 0");
  const BoundaryMode boundary = parse_boundary_mode(cfg.boundary);
  const Kernel2D kernel = detail::select_kernel(cfg, app);
  const GrayImage img = load_pgm(cfg.input);
  atomic_write(cfg.output,
               encode_pgm(sharpen(img, convolve2d(img, kernel, boundary),
                                  cfg.lambda)));
  return kExitOk;
}

inline int cmd_noise(const RunConfig& cfg, std::ostream&) {
  if (!(cfg.noise_sigma >= 0.0)) throw InvalidSpec("sigma must be >= 0");
  const GrayImage img = load_pgm(cfg.input);
  atomic_write(cfg.output,
               encode_pgm(add_gaussian_noise(img, {cfg.noise_sigma, cfg.seed})));
  return kExitOk;
}

inline void print_summary(const BenchReport& report, std::ostream& out) {
  char line[200];
  for (const MarginSummary& m : summarize(report)) {
    std::snprintf(line, sizeof line, "# size %d, sigma %s\n", m.kernel_size,
                  format_real(m.noise_sigma).c_str());
    out << line;
    for (const auto& [id, margin] : m.per_image) {
      std::snprintf(line, sizeof line, "#   %-16s proposed - log = %+.3f dB\n",
                    id.c_str(), margin);
      out << line;
    }
    std::snprintf(line, sizeof line,
                  "#   mean margin = %+.3f dB, proposed wins %d of %zu\n",
                  m.mean_margin, m.wins, m.per_image.size());
    out << line;
  }
  out << "# published reference (dB):\n";
  for (const ReferenceCell& c : *report.reference) {
    std::snprintf(line, sizeof line, "#   %-7s %-8s %dx%d sigma %-3s %6.2f\n",
                  c.image.c_str(), to_string(c.filter).c_str(), c.kernel_size,
                  c.kernel_size, format_real(c.noise_sigma).c_str(), c.psnr_db);
    out << line;
  }
}

inline int cmd_bench(const RunConfig& cfg, const CLI::App* app,
                     std::ostream& out) {
  const DesignSpec spec = detail::resolved_spec(cfg, app);
  BenchOptions options;
  options.quantize_mode = parse_quantize_mode(cfg.quantize);
  options.boundary = parse_boundary_mode(cfg.boundary);
  options.threads = cfg.threads;
  if (cfg.format != "csv" && cfg.format != "json") {
    throw InvalidSpec("format must be csv or json");
  }
  for (int size : cfg.sizes) {
    DesignSpec s = spec;
    s.size = size;
    s.validate();
  }
  for (double sigma : cfg.sigmas) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
      throw InvalidSpec("noise sigmas must be finite and >= 0");
    }
  }

  std::vector<NamedImage> images;
  for (const std::string& path : cfg.images) {
    images.push_back({std::filesystem::path(path).stem().string(),
                      center_crop(load_pgm(path), synthetic::kSide,
                                  synthetic::kSide)});
  }
  if (cfg.synthetic || images.empty()) {
    for (NamedImage& n : synthetic::suite()) images.push_back(std::move(n));
  }

  const BenchReport report =
      run_benchmark(images, cfg.sizes, cfg.sigmas, cfg.seed, spec, options);
  std::ostringstream body;
  if (cfg.format == "csv") write_csv(report, body);
  else body << to_json(report).dump(2) << '\n';

  if (cfg.output.empty()) out << body.str();
  else atomic_write(cfg.output, body.str());
  print_summary(report, out);
  return kExitOk;
}

inline int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  const std::filesystem::path dir = cfg.output;
  std::filesystem::create_directories(dir);
  for (const NamedImage& n : synthetic::suite()) {
    const auto path = dir / (n.id + ".pgm");
    atomic_write(path, encode_pgm(n.image));
    out << path.string() << '\n';
  }
  return kExitOk;
}

/// Parses arguments and runs one subcommand. Exit codes: 0 success,
/// 1 usage error, 2 runtime or data error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Gaussian-modulated tanh high-pass filter design and evaluation",
               "gmhbt"};
  app.require_subcommand(1);

  auto* design = app.add_subcommand("design", "Design a kernel and save it");
  detail::add_design_flags(design, cfg);
  design->add_option("-o,--output", cfg.output, "Kernel text file")->required();

  auto* apply = app.add_subcommand("apply", "Write the quantized HF map");
  detail::add_filter_flags(apply, cfg);
  apply->add_option("--quantize", cfg.quantize, "absolute | offset128")
      ->capture_default_str();

  auto* edges = app.add_subcommand("edges", "Threshold the HF map into edges");
  detail::add_filter_flags(edges, cfg);
  edges->add_option("--fraction", cfg.fraction, "Threshold as a fraction of max |HF|")
      ->capture_default_str();

  auto* sharp = app.add_subcommand("sharpen", "Add lambda * HF onto the image");
  detail::add_filter_flags(sharp, cfg);
  sharp->add_option("--lambda", cfg.lambda)->capture_default_str();

  auto* noise = app.add_subcommand("noise", "Add seeded Gaussian noise");
  noise->add_option("-i,--input", cfg.input)->required();
  noise->add_option("-o,--output", cfg.output)->required();
  noise->add_option("--sigma", cfg.noise_sigma, "Standard deviation")
      ->capture_default_str();
  noise->add_option("--seed", cfg.seed)->capture_default_str();

  auto* bench = app.add_subcommand("bench", "HF restoration PSNR benchmark");
  detail::add_design_flags(bench, cfg);
  std::string sizes = "5", sigmas = "20";
  bench->add_option("--image", cfg.images, "PGM image (repeatable)");
  bench->add_flag("--synthetic", cfg.synthetic,
                  "Include the bundled synthetic suite (default when no --image)");
  bench->add_option("--sizes", sizes, "Comma-separated kernel sizes")
      ->capture_default_str();
  bench->add_option("--sigmas", sigmas, "Comma-separated noise sigmas")
      ->capture_default_str();
  bench->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  bench->add_option("--quantize", cfg.quantize)->capture_default_str();
  bench->add_option("--boundary", cfg.boundary)->capture_default_str();
  bench->add_option("--format", cfg.format, "csv | json")->capture_default_str();
  bench->add_option("-o,--output", cfg.output, "Report file (stdout if omitted)");
  bench->add_option("--threads", cfg.threads)->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Write the synthetic suite as PGMs");
  synth->add_option("-o,--output", cfg.output, "Directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bench) {
      cfg.sizes.clear();
      cfg.sigmas.clear();
      for (const auto& s : detail::split_list(sizes)) cfg.sizes.push_back(std::stoi(s));
      for (const auto& s : detail::split_list(sigmas)) cfg.sigmas.push_back(std::stod(s));
      if (cfg.sizes.empty() || cfg.sigmas.empty()) {
        throw InvalidSpec("--sizes and --sigmas need at least one value");
      }
    }
  } catch (const std::logic_error&) {
    err << "error: --sizes/--sigmas must be comma-separated numbers\n";
    return kExitUsage;
  }

  try {
    if (*design) return cmd_design(cfg, design, out);
    if (*apply) return cmd_apply(cfg, apply, out);
    if (*edges) return cmd_edges(cfg, edges, out);
    if (*sharp) return cmd_sharpen(cfg, sharp, out);
    if (*noise) return cmd_noise(cfg, out);
    if (*bench) return cmd_bench(cfg, bench, out);
    if (*synth) return cmd_synth(cfg, out);
  } catch (const InvalidSpec& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace gmhbt::cli
