#include "tvstokes/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace tvstokes {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("PGM: " + what);
}

void skip_space_and_comments(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

long read_header_int(std::istream& in, const char* field) {
  skip_space_and_comments(in);
  if (!std::isdigit(in.peek())) fail(std::string("expected ") + field);
  long v = 0;
  in >> v;
  if (!in) fail(std::string("malformed ") + field);
  return v;
}

}  // namespace

ScalarField read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
    fail("unsupported magic number (expected P2 or P5)");
  }
  const bool binary = magic[1] == '5';
  const long width = read_header_int(in, "width");
  const long height = read_header_int(in, "height");
  const long maxval = read_header_int(in, "maxval");
  if (width < 1 || height < 1) fail("image dimensions must be positive");
  if (maxval < 1 || maxval > 65535) fail("maxval must be in [1, 65535]");

  ScalarField img(static_cast<std::size_t>(height), static_cast<std::size_t>(width));
  auto v = img.values();
  const double scale = 1.0 / static_cast<double>(maxval);

  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (!std::isspace(in.get())) fail("missing whitespace after maxval");
    const std::size_t bytes_per = maxval > 255 ? 2 : 1;
    std::string raw(v.size() * bytes_per, '\0');
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
      fail("truncated raster: expected " + std::to_string(raw.size()) +
           " bytes, got " + std::to_string(in.gcount()));
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
      unsigned sample = static_cast<unsigned char>(raw[k * bytes_per]);
      if (bytes_per == 2) {
        sample = (sample << 8) | static_cast<unsigned char>(raw[k * 2 + 1]);
      }
      if (sample > static_cast<unsigned>(maxval)) fail("sample exceeds maxval");
      v[k] = sample * scale;
    }
  } else {
    for (std::size_t k = 0; k < v.size(); ++k) {
      skip_space_and_comments(in);
      if (!std::isdigit(in.peek())) {
        fail("truncated or malformed ASCII raster at sample " + std::to_string(k));
      }
      long sample = 0;
      in >> sample;
      if (sample > maxval) fail("sample exceeds maxval");
      v[k] = static_cast<double>(sample) * scale;
    }
  }
  return img;
}

ScalarField read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const ScalarField& u, int maxval) {
  if (maxval != 255 && maxval != 65535) {
    throw std::invalid_argument("write_pgm: maxval must be 255 or 65535");
  }
  out << "P5\n" << u.width() << ' ' << u.height() << '\n' << maxval << '\n';
  const bool wide = maxval > 255;
  std::string raw;
  raw.reserve(u.cells() * (wide ? 2 : 1));
  for (double x : u.values()) {
    const double c = std::clamp(x, 0.0, 1.0);
    const auto q = static_cast<unsigned>(std::floor(c * maxval + 0.5));
    if (wide) raw.push_back(static_cast<char>(q >> 8));
    raw.push_back(static_cast<char>(q & 0xFF));
  }
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

void write_pgm(const std::filesystem::path& path, const ScalarField& u, int maxval) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_pgm(out, u, maxval);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SynthSpec parse_synth_spec(const std::string& text) {
  auto bad = [&](const std::string& why) {
    return std::invalid_argument("invalid synthetic spec '" + text + "': " + why);
  };
  auto parse_int = [&](std::string_view field, const char* name) {
    long v = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || end != field.data() + field.size()) {
      throw bad(std::string("bad ") + name + " '" + std::string(field) + "'");
    }
    return v;
  };

  const std::string_view all(text);
  const auto c1 = all.find(':');
  if (c1 == std::string_view::npos) throw bad("expected KIND:HxW[:LEVELS]");
  const std::string_view kind = all.substr(0, c1);
  const auto c2 = all.find(':', c1 + 1);
  const std::string_view size =
      all.substr(c1 + 1, c2 == std::string_view::npos ? std::string_view::npos : c2 - c1 - 1);

  SynthSpec spec;
  if (kind == "staircase") {
    spec.kind = SynthKind::staircase;
  } else if (kind == "ramp") {
    spec.kind = SynthKind::ramp;
  } else if (kind == "disk") {
    spec.kind = SynthKind::disk;
  } else {
    throw bad("unknown kind '" + std::string(kind) + "'");
  }

  const auto x = size.find('x');
  if (x == std::string_view::npos) throw bad("size must be HxW");
  const long h = parse_int(size.substr(0, x), "height");
  const long w = parse_int(size.substr(x + 1), "width");
  if (h < 1 || w < 1) throw bad("size must be positive");
  spec.height = static_cast<std::size_t>(h);
  spec.width = static_cast<std::size_t>(w);
  if (c2 != std::string_view::npos) {
    spec.levels = static_cast<int>(parse_int(all.substr(c2 + 1), "levels"));
  }
  if (spec.kind == SynthKind::staircase && spec.levels < 2) {
    throw bad("staircase needs at least 2 levels");
  }
  return spec;
}

ScalarField synth(const SynthSpec& spec) {
  if (spec.height < 1 || spec.width < 1) {
    throw std::invalid_argument("synth: size must be positive");
  }
  ScalarField img(spec.height, spec.width);
  const auto h = static_cast<double>(spec.height);
  const auto w = static_cast<double>(spec.width);
  switch (spec.kind) {
    case SynthKind::staircase: {
      if (spec.levels < 2) throw std::invalid_argument("synth: staircase needs >= 2 levels");
      for (std::size_t i = 0; i < spec.height; ++i) {
        const auto band = static_cast<int>(i * static_cast<std::size_t>(spec.levels) /
                                           spec.height);
        const double v = static_cast<double>(band) / (spec.levels - 1);
        for (std::size_t j = 0; j < spec.width; ++j) img(i, j) = v;
      }
      break;
    }
    case SynthKind::ramp:
      for (std::size_t i = 0; i < spec.height; ++i) {
        for (std::size_t j = 0; j < spec.width; ++j) {
          img(i, j) = spec.width > 1 ? static_cast<double>(j) / (w - 1.0) : 0.0;
        }
      }
      break;
    case SynthKind::disk: {
      const double ci = (h - 1.0) / 2.0;
      const double cj = (w - 1.0) / 2.0;
      const double r = std::min(h, w) / 4.0;
      for (std::size_t i = 0; i < spec.height; ++i) {
        for (std::size_t j = 0; j < spec.width; ++j) {
          const double di = static_cast<double>(i) - ci;
          const double dj = static_cast<double>(j) - cj;
          img(i, j) = di * di + dj * dj <= r * r ? 1.0 : 0.0;
        }
      }
      break;
    }
  }
  return img;
}

double GaussianSource::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - uniform() lies in (0, 1], keeping the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

ScalarField add_noise(const ScalarField& u, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("add_noise: sigma must be >= 0");
  ScalarField out = u;
  if (sigma == 0.0) return out;
  GaussianSource rng(seed);
  for (double& v : out.values()) v += sigma * rng.normal();
  return out;
}

std::string format_real(double v) {
  if (std::isnan(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "k,stage,H,g1,g2,l1,l2,gradmap1,gradmap2,primal_change,psnr\n";
  for (const TraceRecord& r : trace.records) {
    out << format_real(r.k) << ',' << stage_name(r.stage) << ','
        << format_real(r.energy.H) << ',' << format_real(r.energy.g1) << ','
        << format_real(r.energy.g2) << ',' << format_real(r.energy.l1) << ','
        << format_real(r.energy.l2) << ',' << format_real(r.gradmap1) << ','
        << format_real(r.gradmap2) << ',' << format_real(r.primal_change) << ','
        << (r.psnr ? format_real(*r.psnr) : std::string()) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_trace_csv(out, trace);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace tvstokes
