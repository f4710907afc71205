#pragma once

#include <cstddef>
#include <vector>

#include "tvstokes/field.hpp"

namespace tvstokes {

/// Precomputed cosine-transform diagonalization of the Neumann Laplacian
/// div(grad(.)) on an H x W grid.
///
/// The orthonormal DCT-II basis cos(pi k (i + 1/2) / H) x cos(pi l (j + 1/2) / W)
/// holds the eigenvectors; mode (k, l) has eigenvalue
/// 2cos(pi k / H) + 2cos(pi l / W) - 4, which vanishes only at (0, 0). The
/// inverse eigenvalue of that mode is stored as 0, giving the pseudoinverse
/// on zero-mean fields. Immutable after construction.
class PoissonPlan {
 public:
  PoissonPlan(std::size_t height, std::size_t width);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }

  double eigenvalue(std::size_t k, std::size_t l) const;
  double inverse_eigenvalue(std::size_t k, std::size_t l) const {
    return inv_eig_[k * width_ + l];
  }

  /// Forward orthonormal 2-D DCT-II.
  ScalarField forward(const ScalarField& x) const;
  /// Inverse of forward (DCT-III).
  ScalarField inverse(const ScalarField& x) const;

  template <std::size_t K>
  void require_shape(const Field<K>& f) const;

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<double> basis_h_;  // H x H, row k = mode k sampled at cells
  std::vector<double> basis_w_;  // W x W
  std::vector<double> inv_eig_;  // H x W
};

/// Zero-mean w with laplacian(w) = rhs - mean(rhs).
///
/// rhs must be numerically zero-mean (|mean| <= 1e-8 * ||rhs||); a larger
/// mean means the caller passed something other than a divergence and is
/// rejected with std::invalid_argument.
ScalarField poisson_pinv(const PoissonPlan& plan, const ScalarField& rhs);

/// Orthogonal projection onto discrete gradient fields:
/// grad(poisson_pinv(div(n))).
VecField project(const PoissonPlan& plan, const VecField& n);

/// Sampled cosine mode (k, l), unnormalized:
/// cos(pi k (i + 1/2) / H) cos(pi l (j + 1/2) / W).
ScalarField cosine_mode(std::size_t height, std::size_t width, std::size_t k,
                        std::size_t l);

}  // namespace tvstokes
