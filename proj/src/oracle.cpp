#include "tvstokes/oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tvstokes/diff_ops.hpp"
#include "tvstokes/image_io.hpp"
#include "tvstokes/projector.hpp"

namespace tvstokes::oracle {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;
using Triplets = std::vector<Eigen::Triplet<double>>;

// ---- difference matrices ----------------------------------------------------

// Forward differences along x (columns) or y (rows); rows of the last
// column / row are empty.
SpMat forward_diff(std::size_t h, std::size_t w, bool along_x) {
  const auto n = static_cast<Eigen::Index>(h * w);
  Triplets t;
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      const auto at = static_cast<Eigen::Index>(i * w + j);
      if (along_x && j + 1 < w) {
        t.emplace_back(at, at + 1, 1.0);
        t.emplace_back(at, at, -1.0);
      } else if (!along_x && i + 1 < h) {
        t.emplace_back(at, at + static_cast<Eigen::Index>(w), 1.0);
        t.emplace_back(at, at, -1.0);
      }
    }
  }
  SpMat d(n, n);
  d.setFromTriplets(t.begin(), t.end());
  return d;
}

SpMat vstack(const SpMat& a, const SpMat& b) {
  Triplets t;
  for (int pass = 0; pass < 2; ++pass) {
    const SpMat& m = pass == 0 ? a : b;
    const Eigen::Index off = pass == 0 ? 0 : a.rows();
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
      for (SpMat::InnerIterator it(m, c); it; ++it) {
        t.emplace_back(it.row() + off, it.col(), it.value());
      }
    }
  }
  SpMat out(a.rows() + b.rows(), a.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SpMat block_diag(const SpMat& a, const SpMat& b) {
  Triplets t;
  for (int pass = 0; pass < 2; ++pass) {
    const SpMat& m = pass == 0 ? a : b;
    const Eigen::Index ro = pass == 0 ? 0 : a.rows();
    const Eigen::Index co = pass == 0 ? 0 : a.cols();
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
      for (SpMat::InnerIterator it(m, c); it; ++it) {
        t.emplace_back(it.row() + ro, it.col() + co, it.value());
      }
    }
  }
  SpMat out(a.rows() + b.rows(), a.cols() + b.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

// Selects `count` consecutive variables starting at `first` out of `total`.
SpMat selector(Eigen::Index count, Eigen::Index first, Eigen::Index total) {
  Triplets t;
  for (Eigen::Index k = 0; k < count; ++k) t.emplace_back(k, first + k, 1.0);
  SpMat s(count, total);
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

// phi = P psi with phi_0 pinned to 0; removes the constant null direction.
SpMat pin_first(Eigen::Index n) {
  Triplets t;
  for (Eigen::Index k = 1; k < n; ++k) t.emplace_back(k, k - 1, 1.0);
  SpMat p(n, n - 1);
  p.setFromTriplets(t.begin(), t.end());
  return p;
}

template <std::size_t K>
Vec to_vec(const Field<K>& f) {
  auto v = f.values();
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

template <std::size_t K>
Field<K> to_field(const Vec& v, std::size_t h, std::size_t w) {
  Field<K> out(h, w);
  auto o = out.values();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = v[static_cast<Eigen::Index>(k)];
  return out;
}

// ---- objective --------------------------------------------------------------

// weight * sum_cells sqrt(|(A v - b)_cell|^2 + eps^2), with the K components
// of a cell stored `cells` apart (planar layout).
struct GroupTerm {
  SpMat a;
  Vec b;
  int k = 1;
  double weight = 0.0;
};

// weight/2 ||A v - b||^2.
struct QuadTerm {
  SpMat a;
  Vec b;
  double weight = 0.0;
};

struct Model {
  std::size_t h = 0;
  std::size_t w = 0;
  Eigen::Index vars = 0;
  std::vector<GroupTerm> groups;
  std::vector<QuadTerm> quads;
  // Maps from the variable vector to n (2N) and u (N) when present.
  std::optional<SpMat> to_n;
  std::optional<SpMat> to_u;
};

struct Eval {
  double value = 0.0;
  Vec grad;
  SpMat hess;
};

Eval evaluate(const Model& m, const Vec& v, double eps, bool want_hess) {
  Eval e;
  e.grad = Vec::Zero(m.vars);
  SpMat hess(m.vars, m.vars);
  const auto cells = static_cast<Eigen::Index>(m.h * m.w);

  for (const GroupTerm& g : m.groups) {
    const Vec z = g.a * v - g.b;
    Vec y(z.size());
    Triplets bt;
    for (Eigen::Index idx = 0; idx < cells; ++idx) {
      double s = eps * eps;
      for (int c = 0; c < g.k; ++c) s += z[c * cells + idx] * z[c * cells + idx];
      const double t = std::sqrt(s);
      e.value += g.weight * t;
      for (int c = 0; c < g.k; ++c) y[c * cells + idx] = z[c * cells + idx] / t;
      if (want_hess) {
        const double t3 = t * t * t;
        for (int c = 0; c < g.k; ++c) {
          for (int d = 0; d < g.k; ++d) {
            const double zc = z[c * cells + idx];
            const double zd = z[d * cells + idx];
            const double val = (c == d ? 1.0 / t : 0.0) - zc * zd / t3;
            bt.emplace_back(c * cells + idx, d * cells + idx, val);
          }
        }
      }
    }
    e.grad += g.weight * (g.a.transpose() * y);
    if (want_hess) {
      SpMat b(z.size(), z.size());
      b.setFromTriplets(bt.begin(), bt.end());
      const SpMat gh = SpMat(g.a.transpose()) * b * g.a;
      hess += g.weight * gh;
    }
  }
  for (const QuadTerm& q : m.quads) {
    const Vec r = q.a * v - q.b;
    e.value += 0.5 * q.weight * r.squaredNorm();
    e.grad += q.weight * (q.a.transpose() * r);
    if (want_hess) {
      const SpMat qh = SpMat(q.a.transpose()) * q.a;
      hess += q.weight * qh;
    }
  }
  if (want_hess) e.hess = std::move(hess);
  return e;
}

Model build_model(const SmoothedProblem& prob) {
  const std::size_t h = prob.f.height();
  const std::size_t w = prob.f.width();
  const auto n = static_cast<Eigen::Index>(h * w);
  const SpMat g = vstack(forward_diff(h, w, true), forward_diff(h, w, false));
  const SpMat jac = block_diag(g, g);
  const SpMat pin = pin_first(n);
  const Vec f = to_vec(prob.f);
  const Vec grad_f = g * f;
  const Params& pr = prob.params;

  Model m;
  m.h = h;
  m.w = w;
  switch (prob.objective) {
    case Objective::sub1: {
      if (!prob.u_fixed) throw std::invalid_argument("oracle: sub1 needs u_fixed");
      m.vars = n - 1;
      const SpMat n_of = g * pin;
      m.groups.push_back({jac * n_of, Vec::Zero(4 * n), 4, pr.alpha});
      m.groups.push_back({n_of, g * to_vec(*prob.u_fixed), 2, pr.beta});
      m.quads.push_back({n_of, grad_f, pr.eta1});
      m.to_n = n_of;
      break;
    }
    case Objective::sub2: {
      if (!prob.n_fixed) throw std::invalid_argument("oracle: sub2 needs n_fixed");
      m.vars = n;
      SpMat eye(n, n);
      eye.setIdentity();
      m.groups.push_back({g, to_vec(*prob.n_fixed), 2, pr.beta});
      m.quads.push_back({eye, f, pr.eta2});
      m.to_u = eye;
      break;
    }
    case Objective::joint: {
      m.vars = 2 * n - 1;
      const SpMat n_of = g * pin * selector(n - 1, 0, m.vars);
      const SpMat u_of = selector(n, n - 1, m.vars);
      m.groups.push_back({jac * n_of, Vec::Zero(4 * n), 4, pr.alpha});
      m.groups.push_back({SpMat(g * u_of - n_of), Vec::Zero(2 * n), 2, pr.beta});
      m.quads.push_back({n_of, grad_f, pr.eta1});
      m.quads.push_back({u_of, f, pr.eta2});
      m.to_n = n_of;
      m.to_u = u_of;
      break;
    }
  }
  return m;
}

// Start at n = grad f, u = f (exact minimizer when alpha = beta = 0).
Vec starting_point(const SmoothedProblem& prob, const Model& m) {
  const auto n = static_cast<Eigen::Index>(m.h * m.w);
  const Vec f = to_vec(prob.f);
  const Vec psi = (f.tail(n - 1).array() - f[0]).matrix();
  switch (prob.objective) {
    case Objective::sub1:
      return psi;
    case Objective::sub2:
      return f;
    case Objective::joint: {
      Vec v(m.vars);
      v << psi, f;
      return v;
    }
  }
  return {};
}

void validate_problem(const SmoothedProblem& prob) {
  if (!(prob.epsilon > 0.0) || !std::isfinite(prob.epsilon)) {
    throw std::invalid_argument("oracle: epsilon must be positive");
  }
  prob.params.validate();
  if (prob.u_fixed) prob.f.require_same_grid(*prob.u_fixed, "oracle u_fixed");
  if (prob.n_fixed && !prob.f.same_grid(*prob.n_fixed)) {
    throw std::invalid_argument("oracle: n_fixed shape differs from f");
  }
}

}  // namespace

SmoothedProblem SmoothedProblem::sub1(const Params& params, ScalarField f,
                                      ScalarField u, double epsilon) {
  SmoothedProblem p{epsilon, Objective::sub1, params, std::move(f), std::move(u), {}};
  return p;
}

SmoothedProblem SmoothedProblem::sub2(const Params& params, ScalarField f,
                                      VecField n, double epsilon) {
  SmoothedProblem p{epsilon, Objective::sub2, params, std::move(f), {}, std::move(n)};
  return p;
}

SmoothedProblem SmoothedProblem::joint(const Params& params, ScalarField f,
                                       double epsilon) {
  SmoothedProblem p{epsilon, Objective::joint, params, std::move(f), {}, {}};
  return p;
}

double smoothed_objective(const SmoothedProblem& prob, const VecField* n,
                          const ScalarField* u) {
  validate_problem(prob);
  // Evaluated directly in field form; n is used as given (no projection),
  // so callers pass gradient fields for sub1 and joint.
  const double eps2 = prob.epsilon * prob.epsilon;
  auto smooth_l1 = [&](const auto& field) {
    double s = 0.0;
    for (std::size_t idx = 0; idx < field.cells(); ++idx) {
      const double m = cell_magnitude(field, idx);
      s += std::sqrt(m * m + eps2);
    }
    return s;
  };
  const Params& pr = prob.params;
  const std::size_t h = prob.f.height();
  const std::size_t w = prob.f.width();
  const SpMat g = vstack(forward_diff(h, w, true), forward_diff(h, w, false));
  const Vec f = to_vec(prob.f);
  auto grad_of = [&](const ScalarField& s) { return to_field<2>(g * to_vec(s), h, w); };
  auto jac_of = [&](const VecField& v) {
    return to_field<4>(block_diag(g, g) * to_vec(v), h, w);
  };

  switch (prob.objective) {
    case Objective::sub1: {
      if (!n) throw std::invalid_argument("smoothed_objective: sub1 needs n");
      const double fid = norm_l2(*n - grad_of(prob.f));
      return pr.alpha * smooth_l1(jac_of(*n)) +
             pr.beta * smooth_l1(*n - grad_of(*prob.u_fixed)) +
             0.5 * pr.eta1 * fid * fid;
    }
    case Objective::sub2: {
      if (!u) throw std::invalid_argument("smoothed_objective: sub2 needs u");
      const double fid = norm_l2(*u - prob.f);
      return pr.beta * smooth_l1(grad_of(*u) - *prob.n_fixed) + 0.5 * pr.eta2 * fid * fid;
    }
    case Objective::joint: {
      if (!n || !u) throw std::invalid_argument("smoothed_objective: joint needs n and u");
      const double fn = norm_l2(*n - grad_of(prob.f));
      const double fu = norm_l2(*u - prob.f);
      return pr.alpha * smooth_l1(jac_of(*n)) + pr.beta * smooth_l1(grad_of(*u) - *n) +
             0.5 * pr.eta1 * fn * fn + 0.5 * pr.eta2 * fu * fu;
    }
  }
  return 0.0;
}

OracleResult oracle_minimize(const SmoothedProblem& prob, int max_steps,
                             double step_tol, std::size_t max_cells) {
  validate_problem(prob);
  if (prob.f.cells() > max_cells) {
    throw std::invalid_argument("oracle_minimize: instance " + prob.f.shape_string() +
                                " exceeds the cost guard of " +
                                std::to_string(max_cells) + " cells");
  }
  if (max_steps < 1) throw std::invalid_argument("oracle_minimize: max_steps must be >= 1");
  if (!(step_tol > 0.0)) throw std::invalid_argument("oracle_minimize: step_tol must be > 0");

  const Model m = build_model(prob);
  OracleResult res;
  Vec v = starting_point(prob, m);

  // 1x1 grids have no free potential; only u can move.
  std::vector<double> schedule;
  for (double e = 1e-2; e > prob.epsilon * 1.000001; e *= 0.1) schedule.push_back(e);
  schedule.push_back(prob.epsilon);

  Eigen::SimplicialLDLT<SpMat> ldlt;
  int steps = 0;
  bool stalled = false;
  Eval cur;
  for (std::size_t stage = 0; stage < schedule.size(); ++stage) {
    const double eps = schedule[stage];
    const bool last = stage + 1 == schedule.size();
    const double tol = last ? step_tol : std::max(step_tol, 1e-6);
    stalled = false;
    for (;;) {
      cur = evaluate(m, v, eps, true);
      if (m.vars == 0 || cur.grad.norm() <= tol || steps >= max_steps) break;
      ldlt.compute(cur.hess);
      if (ldlt.info() != Eigen::Success) {
        stalled = true;
        break;
      }
      const Vec d = -ldlt.solve(cur.grad);
      ++steps;
      const double slope = cur.grad.dot(d);
      if (!(slope < 0.0)) {
        stalled = true;
        break;
      }
      // Below round-off in the value, Armijo cannot discriminate; accept the
      // full Newton step if it shrinks the gradient.
      if (-slope <= 1e-13 * (1.0 + std::abs(cur.value))) {
        const Eval next = evaluate(m, v + d, eps, false);
        if (next.grad.norm() < cur.grad.norm()) {
          v += d;
          continue;
        }
        stalled = true;
        break;
      }
      double t = 1.0;
      bool moved = false;
      for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
        const Eval trial = evaluate(m, v + t * d, eps, false);
        if (trial.value <= cur.value + 1e-4 * t * slope) {
          v += t * d;
          moved = true;
          break;
        }
      }
      if (!moved) {
        stalled = true;
        break;
      }
    }
    if (stalled || steps >= max_steps) {
      if (!last) cur = evaluate(m, v, prob.epsilon, false);
      break;
    }
  }

  res.steps = steps;
  res.objective = cur.value;
  res.grad_norm = cur.grad.norm();
  res.converged = res.grad_norm <= step_tol;
  if (m.to_n) res.n = to_field<2>(*m.to_n * v, m.h, m.w);
  if (m.to_u) res.u = to_field<1>(*m.to_u * v, m.h, m.w);
  return res;
}

// ---- adjointness suite ------------------------------------------------------

namespace {

template <std::size_t K>
Field<K> random_field(std::size_t h, std::size_t w, GaussianSource& rng, bool zero) {
  Field<K> out(h, w);
  if (zero) return out;
  for (double& x : out.values()) x = 2.0 * rng.uniform() - 1.0;
  return out;
}

double ratio(double num, double scale) { return scale > 0.0 ? num / scale : num; }

}  // namespace

double AdjointnessReport::max_violation() const {
  return std::max({grad_div, jacobian_div_tensor, projector_idempotency,
                   projector_self_adjoint, projector_fixed_point});
}

std::string AdjointnessReport::to_text() const {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "adjointness suite %zux%zu, %d trials\n"
                "  grad/div             %.3e\n"
                "  jacobian/div_tensor  %.3e\n"
                "  Pi idempotency       %.3e\n"
                "  Pi self-adjointness  %.3e\n"
                "  Pi fixed point       %.3e\n"
                "  max                  %.3e\n",
                height, width, trials, grad_div, jacobian_div_tensor,
                projector_idempotency, projector_self_adjoint, projector_fixed_point,
                max_violation());
  return buf;
}

std::string AdjointnessReport::to_csv() const {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "check,violation\n"
                "grad_div,%.17g\n"
                "jacobian_div_tensor,%.17g\n"
                "projector_idempotency,%.17g\n"
                "projector_self_adjoint,%.17g\n"
                "projector_fixed_point,%.17g\n",
                grad_div, jacobian_div_tensor, projector_idempotency,
                projector_self_adjoint, projector_fixed_point);
  return buf;
}

AdjointnessReport adjointness_suite(std::size_t height, std::size_t width, int trials,
                                    std::uint64_t seed, bool zero_fields) {
  if (trials < 1) throw std::invalid_argument("adjointness_suite: trials must be >= 1");
  const PoissonPlan plan(height, width);
  AdjointnessReport rep;
  rep.height = height;
  rep.width = width;
  rep.trials = trials;

  for (int t = 0; t < trials; ++t) {
    GaussianSource rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(t + 1)));
    const auto u = random_field<1>(height, width, rng, zero_fields);
    const auto p = random_field<2>(height, width, rng, zero_fields);
    const auto a = random_field<2>(height, width, rng, zero_fields);
    const auto b = random_field<2>(height, width, rng, zero_fields);
    const auto tp = random_field<4>(height, width, rng, zero_fields);

    const VecField gu = grad(u);
    const ScalarField dp = div(p);
    rep.grad_div = std::max(
        rep.grad_div, ratio(std::abs(inner(gu, p) + inner(u, dp)),
                            norm_l2(gu) * norm_l2(p) + norm_l2(u) * norm_l2(dp)));

    const TensorField ja = jacobian(a);
    const VecField dt = div_tensor(tp);
    rep.jacobian_div_tensor = std::max(
        rep.jacobian_div_tensor,
        ratio(std::abs(inner(ja, tp) + inner(a, dt)),
              norm_l2(ja) * norm_l2(tp) + norm_l2(a) * norm_l2(dt)));

    const VecField pa = project(plan, a);
    const VecField pb = project(plan, b);
    rep.projector_idempotency = std::max(
        rep.projector_idempotency, ratio(norm_l2(project(plan, pa) - pa), norm_l2(a)));
    rep.projector_self_adjoint =
        std::max(rep.projector_self_adjoint,
                 ratio(std::abs(inner(pa, b) - inner(a, pb)), norm_l2(a) * norm_l2(b)));
    rep.projector_fixed_point = std::max(
        rep.projector_fixed_point, ratio(norm_l2(project(plan, gu) - gu), norm_l2(gu)));
  }
  return rep;
}

}  // namespace tvstokes::oracle
