#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvstokes {

/// Dense H x W grid carrying `Components` real values per cell.
///
/// Storage is planar: component c occupies the contiguous range
/// [c*H*W, (c+1)*H*W), each plane in row-major order. Cell (i, j) is row i,
/// column j; the x direction runs along columns and the y direction along
/// rows.
template <std::size_t Components>
class Field {
  static_assert(Components >= 1);

 public:
  static constexpr std::size_t components = Components;

  Field(std::size_t height, std::size_t width, double fill = 0.0)
      : height_(height), width_(width) {
    if (height == 0 || width == 0) {
      throw std::invalid_argument("field shape must be at least 1x1, got " +
                                  std::to_string(height) + "x" +
                                  std::to_string(width));
    }
    values_.assign(Components * height * width, fill);
  }

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t cells() const noexcept { return height_ * width_; }

  template <std::size_t Other>
  bool same_grid(const Field<Other>& other) const noexcept {
    return height_ == other.height() && width_ == other.width();
  }

  double& operator()(std::size_t c, std::size_t i, std::size_t j) {
    return values_[c * cells() + i * width_ + j];
  }
  double operator()(std::size_t c, std::size_t i, std::size_t j) const {
    return values_[c * cells() + i * width_ + j];
  }

  // Scalar shorthand.
  double& operator()(std::size_t i, std::size_t j)
    requires(Components == 1)
  {
    return values_[i * width_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const
    requires(Components == 1)
  {
    return values_[i * width_ + j];
  }

  std::span<double> plane(std::size_t c) {
    return {values_.data() + c * cells(), cells()};
  }
  std::span<const double> plane(std::size_t c) const {
    return {values_.data() + c * cells(), cells()};
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  Field& operator+=(const Field& o) {
    require_same_grid(o, "+=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
  }
  Field& operator-=(const Field& o) {
    require_same_grid(o, "-=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
  }
  Field& operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator-(Field a) { return a *= -1.0; }

  friend bool operator==(const Field&, const Field&) = default;

  void require_same_grid(const Field& o, const char* what) const {
    if (!same_grid(o)) {
      throw std::invalid_argument(std::string("shape mismatch in ") + what +
                                  ": " + shape_string() + " vs " +
                                  o.shape_string());
    }
  }

  std::string shape_string() const {
    return std::to_string(height_) + "x" + std::to_string(width_) + "x" +
           std::to_string(Components);
  }

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<double> values_;
};

using ScalarField = Field<1>;
using VecField = Field<2>;
/// Components per cell: (dx n1, dy n1, dx n2, dy n2).
using TensorField = Field<4>;

/// Sum over cells and components of a*b. Throws on shape mismatch.
template <std::size_t K>
double inner(const Field<K>& a, const Field<K>& b) {
  a.require_same_grid(b, "inner");
  auto x = a.values();
  auto y = b.values();
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) sum += x[k] * y[k];
  return sum;
}

template <std::size_t K>
double norm_l2(const Field<K>& a) {
  return std::sqrt(inner(a, a));
}

/// Euclidean magnitude of the K components at cell `idx` (row-major index).
template <std::size_t K>
double cell_magnitude(const Field<K>& a, std::size_t idx) {
  const std::size_t n = a.cells();
  auto v = a.values();
  double s = 0.0;
  for (std::size_t c = 0; c < K; ++c) s += v[c * n + idx] * v[c * n + idx];
  return std::sqrt(s);
}

/// Isotropic L1 norm: the sum over cells of the per-cell Euclidean magnitude.
template <std::size_t K>
double sum_pointwise_euclid(const Field<K>& a) {
  double sum = 0.0;
  for (std::size_t idx = 0; idx < a.cells(); ++idx) sum += cell_magnitude(a, idx);
  return sum;
}

/// Largest per-cell Euclidean magnitude (the discrete sup norm used for duals).
template <std::size_t K>
double max_pointwise_euclid(const Field<K>& a) {
  double m = 0.0;
  for (std::size_t idx = 0; idx < a.cells(); ++idx) {
    m = std::max(m, cell_magnitude(a, idx));
  }
  return m;
}

double mean(const ScalarField& a);

}  // namespace tvstokes
