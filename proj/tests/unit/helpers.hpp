#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "tvstokes/field.hpp"
#include "tvstokes/image_io.hpp"

namespace th {

using namespace tvstokes;

template <std::size_t K>
Field<K> from_array(std::size_t h, std::size_t w, const double* data) {
  Field<K> f(h, w);
  auto v = f.values();
  std::copy(data, data + v.size(), v.begin());
  return f;
}

/// Uniform in [lo, hi), reproducible per seed.
template <std::size_t K>
Field<K> random_field(std::size_t h, std::size_t w, std::uint64_t seed, double lo = -1.0,
                      double hi = 1.0) {
  GaussianSource rng(seed);
  Field<K> f(h, w);
  for (double& x : f.values()) x = lo + (hi - lo) * rng.uniform();
  return f;
}

template <std::size_t K>
double max_abs_diff(const Field<K>& a, const Field<K>& b) {
  double m = 0.0;
  auto x = a.values();
  auto y = b.values();
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k] - y[k]));
  return m;
}

template <std::size_t K>
double max_abs_diff(const Field<K>& a, const double* expected) {
  double m = 0.0;
  auto x = a.values();
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k] - expected[k]));
  return m;
}

template <std::size_t K>
double max_abs(const Field<K>& a) {
  double m = 0.0;
  for (double x : a.values()) m = std::max(m, std::abs(x));
  return m;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace th
