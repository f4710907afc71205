#pragma once

#include <cstddef>
#include <utility>

#include "tvstokes/field.hpp"
#include "tvstokes/projector.hpp"

namespace tvstokes {

/// Model weights, dual step sizes and iteration budgets.
///
/// The model is
///   min_{n, u; Pi n = n}  alpha |grad n| + beta |grad u - n|
///                         + eta1/2 ||n - grad f||^2 + eta2/2 ||u - f||^2.
/// eta1 and eta2 double as the block Lipschitz constants of the smooth part,
/// so both must be strictly positive.
struct Params {
  double alpha = 0.05;
  double beta = 0.05;
  double eta1 = 1.0;
  double eta2 = 1.0;

  double tau_p = 1.0 / 64.0;
  double tau_q = 1.0 / 4.0;
  double tau_s = 1.0 / 8.0;

  int inner_iters = 300;
  double inner_tol = 1e-6;
  int outer_iters = 100;
  double outer_tol = 1e-5;

  /// Throws std::invalid_argument naming the first violated requirement.
  void validate() const;
};

/// Dual state of the n-subproblem. p is dual to grad(Pi n), q to Pi n - grad u;
/// n is the primal recovered from (p, q).
struct Sub1State {
  TensorField p;
  VecField q;
  VecField n;

  static Sub1State zero(std::size_t height, std::size_t width);
};

/// Dual state of the u-subproblem with its recovered primal.
struct Sub2State {
  VecField s;
  ScalarField u;

  static Sub2State zero(std::size_t height, std::size_t width);
};

/// Bookkeeping from one inner solve.
struct SolveInfo {
  int sweeps = 0;
  /// Max per-cell dual change in the last sweep.
  double dual_change = 0.0;
  /// L2 norm of the primal change produced by the last sweep.
  double primal_step = 0.0;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  /// Sweeps after which the recovered primal's objective went up.
  int objective_increases = 0;
  bool converged = false;
};

// ---- n-subproblem ----------------------------------------------------------

/// n = grad_f - (alpha/eta1) Pi(div_tensor p) - (beta/eta1) Pi(q).
VecField sub1_primal_from_duals(const Params& params, const PoissonPlan& plan,
                                const VecField& grad_f, const Sub1State& st);

/// Ascent directions for (p, q): r_p = jacobian(-n), r_q = n - grad_u with n
/// from sub1_primal_from_duals.
std::pair<TensorField, VecField> sub1_directions(const Params& params,
                                                 const PoissonPlan& plan,
                                                 const VecField& grad_f,
                                                 const VecField& grad_u,
                                                 const Sub1State& st);

/// alpha |grad Pi n| + eta1/2 ||n - grad_f||^2 + beta |Pi n - grad_u|.
double sub1_objective(const Params& params, const PoissonPlan& plan,
                      const VecField& grad_f, const VecField& grad_u,
                      const VecField& n);

/// Solves the n-subproblem for fixed u_prev by semi-implicit dual ascent.
///
/// Starts from `warm` when given (it must be dual-feasible), else from zero
/// duals. Stops after inner_iters sweeps or once the max per-cell dual change
/// drops to inner_tol. The returned state is the visited dual iterate whose
/// recovered primal has the lowest objective, so the objective never exceeds
/// its warm-start value.
Sub1State solve_sub1(const Params& params, const PoissonPlan& plan,
                     const ScalarField& f, const ScalarField& u_prev,
                     const Sub1State* warm = nullptr, SolveInfo* info = nullptr);

// ---- u-subproblem ----------------------------------------------------------

/// u = f - (beta/eta2) div(s).
ScalarField sub2_primal_from_dual(const Params& params, const ScalarField& f,
                                  const Sub2State& st);

/// r_s = n - grad(u) with u from sub2_primal_from_dual.
VecField sub2_direction(const Params& params, const ScalarField& f,
                        const VecField& n, const Sub2State& st);

/// beta |grad u - n| + eta2/2 ||u - f||^2.
double sub2_objective(const Params& params, const ScalarField& f,
                      const VecField& n, const ScalarField& u);

/// Solves the u-subproblem for fixed n; same contract as solve_sub1.
Sub2State solve_sub2(const Params& params, const ScalarField& f,
                     const VecField& n, const Sub2State* warm = nullptr,
                     SolveInfo* info = nullptr);

// ---- shared ----------------------------------------------------------------

/// Semi-implicit dual update, per cell: x' = (x + tau r) / (1 + tau |r|).
/// Keeps |x'| <= 1 whenever |x| <= 1.
template <std::size_t K>
Field<K> dual_step(const Field<K>& x, const Field<K>& r, double tau) {
  x.require_same_grid(r, "dual_step");
  Field<K> out(x.height(), x.width());
  const std::size_t n = x.cells();
  auto xv = x.values();
  auto rv = r.values();
  auto ov = out.values();
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double denom = 1.0 + tau * cell_magnitude(r, idx);
    for (std::size_t c = 0; c < K; ++c) {
      const std::size_t at = c * n + idx;
      ov[at] = (xv[at] + tau * rv[at]) / denom;
    }
  }
  return out;
}

/// Max over cells of the Euclidean magnitude of a - b.
template <std::size_t K>
double max_cell_change(const Field<K>& a, const Field<K>& b) {
  return max_pointwise_euclid(a - b);
}

}  // namespace tvstokes
