#include "tvstokes/diff_ops.hpp"

namespace tvstokes {

namespace {

// Forward differences of `src` written into out planes (cx, cy).
template <std::size_t K>
void forward_diff(std::span<const double> src, std::size_t h, std::size_t w,
                  Field<K>& out, std::size_t cx, std::size_t cy) {
  auto gx = out.plane(cx);
  auto gy = out.plane(cy);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      const std::size_t idx = i * w + j;
      gx[idx] = (j + 1 < w) ? src[idx + 1] - src[idx] : 0.0;
      gy[idx] = (i + 1 < h) ? src[idx + w] - src[idx] : 0.0;
    }
  }
}

// Negative adjoint of forward_diff: the last column of px and the last row
// of py never enter the gradient, so they are ignored here.
void backward_div(std::span<const double> px, std::span<const double> py,
                  std::size_t h, std::size_t w, std::span<double> out) {
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      const std::size_t idx = i * w + j;
      double d = 0.0;
      if (j + 1 < w) d += px[idx];
      if (j > 0) d -= px[idx - 1];
      if (i + 1 < h) d += py[idx];
      if (i > 0) d -= py[idx - w];
      out[idx] = d;
    }
  }
}

}  // namespace

VecField grad(const ScalarField& u) {
  VecField g(u.height(), u.width());
  forward_diff(u.plane(0), u.height(), u.width(), g, 0, 1);
  return g;
}

ScalarField div(const VecField& p) {
  ScalarField d(p.height(), p.width());
  backward_div(p.plane(0), p.plane(1), p.height(), p.width(), d.plane(0));
  return d;
}

TensorField jacobian(const VecField& n) {
  TensorField t(n.height(), n.width());
  forward_diff(n.plane(0), n.height(), n.width(), t, 0, 1);
  forward_diff(n.plane(1), n.height(), n.width(), t, 2, 3);
  return t;
}

VecField div_tensor(const TensorField& p) {
  VecField d(p.height(), p.width());
  backward_div(p.plane(0), p.plane(1), p.height(), p.width(), d.plane(0));
  backward_div(p.plane(2), p.plane(3), p.height(), p.width(), d.plane(1));
  return d;
}

ScalarField laplacian(const ScalarField& u) { return div(grad(u)); }

}  // namespace tvstokes
