#include "tvstokes/projector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tvstokes/diff_ops.hpp"

namespace tvstokes {

namespace {

std::vector<double> dct_basis(std::size_t n) {
  std::vector<double> b(n * n);
  const double s0 = std::sqrt(1.0 / static_cast<double>(n));
  const double sk = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double arg = std::numbers::pi * static_cast<double>(k) *
                         (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      b[k * n + i] = (k == 0 ? s0 : sk) * std::cos(arg);
    }
  }
  return b;
}

// out = B_h * in * B_w^T, or B_h^T * in * B_w when transpose is set.
void separable(std::span<const double> in, std::span<double> out,
               const std::vector<double>& bh, const std::vector<double>& bw,
               std::size_t h, std::size_t w, bool transpose) {
  std::vector<double> rows(h * w, 0.0);
  // Along each row (width direction).
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t l = 0; l < w; ++l) {
      double s = 0.0;
      for (std::size_t j = 0; j < w; ++j) {
        const double c = transpose ? bw[j * w + l] : bw[l * w + j];
        s += c * in[i * w + j];
      }
      rows[i * w + l] = s;
    }
  }
  // Along each column (height direction).
  for (std::size_t x = 0; x < h * w; ++x) out[x] = 0.0;
  for (std::size_t k = 0; k < h; ++k) {
    for (std::size_t i = 0; i < h; ++i) {
      const double c = transpose ? bh[i * h + k] : bh[k * h + i];
      for (std::size_t l = 0; l < w; ++l) out[k * w + l] += c * rows[i * w + l];
    }
  }
}

ScalarField solve_zero_mean(const PoissonPlan& plan, const ScalarField& rhs) {
  ScalarField coeffs = plan.forward(rhs);
  auto c = coeffs.plane(0);
  for (std::size_t k = 0; k < plan.height(); ++k) {
    for (std::size_t l = 0; l < plan.width(); ++l) {
      c[k * plan.width() + l] *= plan.inverse_eigenvalue(k, l);
    }
  }
  return plan.inverse(coeffs);
}

}  // namespace

PoissonPlan::PoissonPlan(std::size_t height, std::size_t width)
    : height_(height), width_(width) {
  if (height == 0 || width == 0) {
    throw std::invalid_argument("PoissonPlan shape must be at least 1x1");
  }
  basis_h_ = dct_basis(height);
  basis_w_ = dct_basis(width);
  inv_eig_.resize(height * width);
  for (std::size_t k = 0; k < height; ++k) {
    for (std::size_t l = 0; l < width; ++l) {
      inv_eig_[k * width + l] = (k == 0 && l == 0) ? 0.0 : 1.0 / eigenvalue(k, l);
    }
  }
}

double PoissonPlan::eigenvalue(std::size_t k, std::size_t l) const {
  using std::numbers::pi;
  return 2.0 * std::cos(pi * static_cast<double>(k) / static_cast<double>(height_)) +
         2.0 * std::cos(pi * static_cast<double>(l) / static_cast<double>(width_)) -
         4.0;
}

ScalarField PoissonPlan::forward(const ScalarField& x) const {
  require_shape(x);
  ScalarField out(height_, width_);
  separable(x.plane(0), out.plane(0), basis_h_, basis_w_, height_, width_, false);
  return out;
}

ScalarField PoissonPlan::inverse(const ScalarField& x) const {
  require_shape(x);
  ScalarField out(height_, width_);
  separable(x.plane(0), out.plane(0), basis_h_, basis_w_, height_, width_, true);
  return out;
}

template <std::size_t K>
void PoissonPlan::require_shape(const Field<K>& f) const {
  if (f.height() != height_ || f.width() != width_) {
    throw std::invalid_argument(
        "PoissonPlan is " + std::to_string(height_) + "x" +
        std::to_string(width_) + " but field is " + f.shape_string());
  }
}

template void PoissonPlan::require_shape(const Field<1>&) const;
template void PoissonPlan::require_shape(const Field<2>&) const;
template void PoissonPlan::require_shape(const Field<4>&) const;

ScalarField poisson_pinv(const PoissonPlan& plan, const ScalarField& rhs) {
  plan.require_shape(rhs);
  const double m = mean(rhs);
  if (std::abs(m) > 1e-8 * norm_l2(rhs)) {
    throw std::invalid_argument("poisson_pinv: right-hand side has mean " +
                                std::to_string(m) +
                                "; only zero-mean data (a divergence) is solvable");
  }
  return solve_zero_mean(plan, rhs);
}

VecField project(const PoissonPlan& plan, const VecField& n) {
  plan.require_shape(n);
  // div output is zero-mean by construction; the (0,0) mode is dropped anyway.
  return grad(solve_zero_mean(plan, div(n)));
}

ScalarField cosine_mode(std::size_t height, std::size_t width, std::size_t k,
                        std::size_t l) {
  using std::numbers::pi;
  ScalarField m(height, width);
  for (std::size_t i = 0; i < height; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      m(i, j) = std::cos(pi * static_cast<double>(k) * (static_cast<double>(i) + 0.5) /
                         static_cast<double>(height)) *
                std::cos(pi * static_cast<double>(l) * (static_cast<double>(j) + 0.5) /
                         static_cast<double>(width));
    }
  }
  return m;
}

}  // namespace tvstokes
