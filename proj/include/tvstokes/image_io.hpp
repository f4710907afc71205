#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>

#include "tvstokes/driver.hpp"
#include "tvstokes/field.hpp"

namespace tvstokes {

/// Reads a P2 (ASCII) or P5 (binary) PGM, scaling samples by 1/maxval.
/// '#' comments are allowed anywhere in the header. Throws std::runtime_error
/// with a description on malformed or truncated input.
ScalarField read_pgm(const std::filesystem::path& path);
ScalarField read_pgm(std::istream& in);

/// Writes binary P5. Values are clamped to [0, 1] and quantized by
/// floor(v * maxval + 0.5); maxval must be 255 or 65535.
void write_pgm(const std::filesystem::path& path, const ScalarField& u,
               int maxval = 255);
void write_pgm(std::ostream& out, const ScalarField& u, int maxval = 255);

enum class SynthKind { staircase, ramp, disk };

struct SynthSpec {
  SynthKind kind = SynthKind::staircase;
  std::size_t height = 32;
  std::size_t width = 32;
  int levels = 4;  // staircase only
};

/// Parses "KIND:HxW[:LEVELS]", e.g. "staircase:32x32:4".
SynthSpec parse_synth_spec(const std::string& text);

/// staircase: `levels` horizontal bands at intensities 0, 1/(levels-1), ..., 1.
/// ramp: left-to-right linear ramp from 0 to 1.
/// disk: 1 inside the centered disk of radius min(H, W)/4, 0 outside.
ScalarField synth(const SynthSpec& spec);

/// Gaussian samples from mt19937_64 through the Box-Muller transform.
///
/// Both the engine (fully specified by the standard) and the transform are
/// fixed here, so a seed reproduces the same stream on every platform;
/// std::normal_distribution gives no such guarantee.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// u + sigma * N(0, 1) per cell, row-major order, no clamping.
ScalarField add_noise(const ScalarField& u, double sigma, std::uint64_t seed);

/// Header plus one line per record; 17 significant digits, '.' decimal
/// separator, LF line ends. Columns:
/// k,stage,H,g1,g2,l1,l2,gradmap1,gradmap2,primal_change,psnr
void write_trace_csv(std::ostream& out, const Trace& trace);
void write_trace_csv(const std::filesystem::path& path, const Trace& trace);

/// %.17g rendering; empty string for NaN.
std::string format_real(double v);

}  // namespace tvstokes
