#include "tvstokes/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <string>

#include "tvstokes/driver.hpp"
#include "tvstokes/image_io.hpp"

namespace tvstokes {

namespace {

struct RunConfig {
  std::string input;
  std::string synthetic;
  std::string out;
  std::string trace;
  std::string clean;
  Params params;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  int maxval = 255;
  bool diagnostics = true;
};

constexpr std::size_t kMinSide = 4;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int run(const RunConfig& cfg, std::ostream& out) {
  ScalarField f(1, 1);
  std::optional<ScalarField> clean;
  if (!cfg.synthetic.empty()) {
    const ScalarField base = synth(parse_synth_spec(cfg.synthetic));
    f = add_noise(base, cfg.sigma, cfg.seed);
    clean = base;
  } else {
    const ScalarField base = read_pgm(cfg.input);
    if (base.height() < kMinSide || base.width() < kMinSide) {
      throw std::runtime_error("input image " + cfg.input + " is smaller than 4x4");
    }
    f = add_noise(base, cfg.sigma, cfg.seed);
    if (cfg.sigma > 0.0) clean = base;
  }
  if (!cfg.clean.empty()) clean = read_pgm(cfg.clean);

  DenoiseOptions opts;
  opts.clean = clean;
  opts.diagnostics = cfg.diagnostics;
  const DenoiseResult res = denoise(cfg.params, f, opts);

  write_pgm(cfg.out, res.u, cfg.maxval);
  if (!cfg.trace.empty()) write_trace_csv(cfg.trace, res.trace);

  const TraceRecord& last = res.trace.records.back();
  out << "outer iterations: " << res.outer_iterations << '\n';
  out << "final H: " << fmt(last.energy.H) << '\n';
  if (clean) {
    out << "PSNR noisy: " << fmt(psnr(f, *clean)) << " dB\n";
    out << "PSNR denoised: " << fmt(psnr(res.u, *clean)) << " dB\n";
  }
  out << "wrote " << cfg.out << '\n';
  if (!cfg.trace.empty()) out << "wrote " << cfg.trace << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"TV-Stokes denoising by alternating minimization"};
  app.set_help_flag("-h,--help", "Print this help and exit");

  auto* input = app.add_option("--input", cfg.input, "Noisy (or clean, with --sigma) PGM image");
  auto* synthetic = app.add_option("--synthetic", cfg.synthetic,
                                   "Synthetic clean image KIND:HxW[:LEVELS], "
                                   "KIND in staircase|ramp|disk");
  input->excludes(synthetic);
  app.add_option("--out", cfg.out, "Output PGM path")->required();
  app.add_option("--trace", cfg.trace, "Trace CSV path");
  app.add_option("--clean", cfg.clean, "Clean reference PGM for PSNR");

  Params& p = cfg.params;
  app.add_option("--alpha", p.alpha, "Weight of |grad n|")->capture_default_str();
  app.add_option("--beta", p.beta, "Weight of |grad u - n|")->capture_default_str();
  app.add_option("--eta1", p.eta1, "Fidelity weight of n (> 0)")->capture_default_str();
  app.add_option("--eta2", p.eta2, "Fidelity weight of u (> 0)")->capture_default_str();
  app.add_option("--tau-p", p.tau_p, "Dual step for p")->capture_default_str();
  app.add_option("--tau-q", p.tau_q, "Dual step for q")->capture_default_str();
  app.add_option("--tau-s", p.tau_s, "Dual step for s")->capture_default_str();
  app.add_option("--inner-iters", p.inner_iters, "Dual sweeps per subproblem")
      ->capture_default_str();
  app.add_option("--outer-iters", p.outer_iters, "Alternating iterations")
      ->capture_default_str();
  app.add_option("--inner-tol", p.inner_tol, "Max per-cell dual change to stop")
      ->capture_default_str();
  app.add_option("--outer-tol", p.outer_tol, "Relative change of u to stop")
      ->capture_default_str();
  app.add_option("--sigma", cfg.sigma, "Gaussian noise level added to the input")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Noise seed")->capture_default_str();
  app.add_option("--maxval", cfg.maxval, "Output PGM maxval")
      ->check(CLI::IsMember({255, 65535}))
      ->capture_default_str();
  app.add_flag("!--no-diagnostics", cfg.diagnostics,
               "Skip the gradient-mapping probes (empty gradmap columns)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (cfg.input.empty() == cfg.synthetic.empty()) {
    err << "error: exactly one of --input or --synthetic is required\n";
    return 2;
  }
  try {
    cfg.params.validate();
    if (!cfg.synthetic.empty()) {
      const SynthSpec spec = parse_synth_spec(cfg.synthetic);
      if (spec.height < kMinSide || spec.width < kMinSide) {
        throw std::invalid_argument("synthetic size must be at least 4x4");
      }
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    return run(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace tvstokes
