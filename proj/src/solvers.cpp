#include "tvstokes/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tvstokes/diff_ops.hpp"

namespace tvstokes {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("invalid Params: " + what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

constexpr double kFeasibilitySlack = 1e-12;

template <std::size_t K>
void require_feasible(const Field<K>& dual, const char* name) {
  if (max_pointwise_euclid(dual) > 1.0 + kFeasibilitySlack) {
    throw std::invalid_argument(std::string("warm start dual ") + name +
                                " is outside the unit ball");
  }
}

struct Sub1Eval {
  VecField n;
  TensorField r_p;
  VecField r_q;
};

Sub1Eval evaluate_sub1(const Params& params, const PoissonPlan& plan,
                       const VecField& grad_f, const VecField& grad_u,
                       const Sub1State& st) {
  VecField n = sub1_primal_from_duals(params, plan, grad_f, st);
  TensorField r_p = jacobian(-n);
  VecField r_q = n - grad_u;
  return {std::move(n), std::move(r_p), std::move(r_q)};
}

// Objective of the n-block using the directions already at hand:
// |r_p| = |grad n| and |r_q| = |n - grad u|. n is a Pi-image here, so this
// agrees with sub1_objective up to round-off.
double sub1_objective_from(const Params& params, const VecField& grad_f,
                           const Sub1Eval& ev) {
  const double fid = norm_l2(ev.n - grad_f);
  return params.alpha * sum_pointwise_euclid(ev.r_p) +
         params.beta * sum_pointwise_euclid(ev.r_q) +
         0.5 * params.eta1 * fid * fid;
}

}  // namespace

void Params::validate() const {
  require(finite_nonneg(alpha), "alpha must be >= 0");
  require(finite_nonneg(beta), "beta must be >= 0");
  require(finite_pos(eta1),
          "eta1 must be > 0 (the n-update divides by eta1; eta1 = 0 is not supported)");
  require(finite_pos(eta2), "eta2 must be > 0 (the u-update divides by eta2)");
  require(finite_pos(tau_p), "tau_p must be > 0");
  require(finite_pos(tau_q), "tau_q must be > 0");
  require(finite_pos(tau_s), "tau_s must be > 0");
  require(inner_iters >= 1, "inner_iters must be >= 1");
  require(finite_pos(inner_tol), "inner_tol must be > 0");
  require(outer_iters >= 1, "outer_iters must be >= 1");
  require(finite_nonneg(outer_tol), "outer_tol must be >= 0");
}

Sub1State Sub1State::zero(std::size_t height, std::size_t width) {
  return {TensorField(height, width), VecField(height, width), VecField(height, width)};
}

Sub2State Sub2State::zero(std::size_t height, std::size_t width) {
  return {VecField(height, width), ScalarField(height, width)};
}

// ---- n-subproblem ----------------------------------------------------------

VecField sub1_primal_from_duals(const Params& params, const PoissonPlan& plan,
                                const VecField& grad_f, const Sub1State& st) {
  // Pi is linear, so the two corrections share one projection.
  VecField correction = (params.alpha / params.eta1) * div_tensor(st.p);
  correction += (params.beta / params.eta1) * st.q;
  return grad_f - project(plan, correction);
}

std::pair<TensorField, VecField> sub1_directions(const Params& params,
                                                 const PoissonPlan& plan,
                                                 const VecField& grad_f,
                                                 const VecField& grad_u,
                                                 const Sub1State& st) {
  Sub1Eval ev = evaluate_sub1(params, plan, grad_f, grad_u, st);
  return {std::move(ev.r_p), std::move(ev.r_q)};
}

double sub1_objective(const Params& params, const PoissonPlan& plan,
                      const VecField& grad_f, const VecField& grad_u,
                      const VecField& n) {
  const VecField pn = project(plan, n);
  const double fid = norm_l2(n - grad_f);
  return params.alpha * sum_pointwise_euclid(jacobian(pn)) +
         0.5 * params.eta1 * fid * fid +
         params.beta * sum_pointwise_euclid(pn - grad_u);
}

Sub1State solve_sub1(const Params& params, const PoissonPlan& plan,
                     const ScalarField& f, const ScalarField& u_prev,
                     const Sub1State* warm, SolveInfo* info) {
  params.validate();
  plan.require_shape(f);
  plan.require_shape(u_prev);

  Sub1State st = Sub1State::zero(f.height(), f.width());
  if (warm != nullptr) {
    plan.require_shape(warm->p);
    plan.require_shape(warm->q);
    require_feasible(warm->p, "p");
    require_feasible(warm->q, "q");
    st.p = warm->p;
    st.q = warm->q;
  }

  const VecField grad_f = grad(f);
  const VecField grad_u = grad(u_prev);

  SolveInfo local;
  Sub1Eval ev = evaluate_sub1(params, plan, grad_f, grad_u, st);
  double obj = sub1_objective_from(params, grad_f, ev);
  local.initial_objective = obj;

  st.n = ev.n;
  Sub1State best = st;
  double best_obj = obj;

  for (int sweep = 0; sweep < params.inner_iters; ++sweep) {
    TensorField p_next = dual_step(st.p, ev.r_p, params.tau_p);
    VecField q_next = dual_step(st.q, ev.r_q, params.tau_q);
    local.dual_change =
        std::max(max_cell_change(p_next, st.p), max_cell_change(q_next, st.q));
    st.p = std::move(p_next);
    st.q = std::move(q_next);
    local.sweeps = sweep + 1;

    Sub1Eval next = evaluate_sub1(params, plan, grad_f, grad_u, st);
    local.primal_step = norm_l2(next.n - ev.n);
    ev = std::move(next);
    const double prev_obj = obj;
    obj = sub1_objective_from(params, grad_f, ev);
    if (obj > prev_obj) ++local.objective_increases;
    st.n = ev.n;
    if (obj <= best_obj) {
      best = st;
      best_obj = obj;
    }
    if (local.dual_change <= params.inner_tol) {
      local.converged = true;
      break;
    }
  }

  local.final_objective = best_obj;
  if (info != nullptr) *info = local;
  return best;
}

// ---- u-subproblem ----------------------------------------------------------

ScalarField sub2_primal_from_dual(const Params& params, const ScalarField& f,
                                  const Sub2State& st) {
  return f - (params.beta / params.eta2) * div(st.s);
}

VecField sub2_direction(const Params& params, const ScalarField& f,
                        const VecField& n, const Sub2State& st) {
  return n - grad(sub2_primal_from_dual(params, f, st));
}

double sub2_objective(const Params& params, const ScalarField& f,
                      const VecField& n, const ScalarField& u) {
  const double fid = norm_l2(u - f);
  return params.beta * sum_pointwise_euclid(grad(u) - n) +
         0.5 * params.eta2 * fid * fid;
}

Sub2State solve_sub2(const Params& params, const ScalarField& f,
                     const VecField& n, const Sub2State* warm, SolveInfo* info) {
  params.validate();
  if (!f.same_grid(n)) {
    throw std::invalid_argument("solve_sub2: f is " + f.shape_string() +
                                " but n is " + n.shape_string());
  }

  Sub2State st = Sub2State::zero(f.height(), f.width());
  if (warm != nullptr) {
    if (!warm->s.same_grid(f)) {
      throw std::invalid_argument("solve_sub2: warm state shape mismatch");
    }
    require_feasible(warm->s, "s");
    st.s = warm->s;
  }

  SolveInfo local;
  st.u = sub2_primal_from_dual(params, f, st);
  VecField r_s = n - grad(st.u);
  auto objective = [&](const ScalarField& u, const VecField& r) {
    const double fid = norm_l2(u - f);
    return params.beta * sum_pointwise_euclid(r) + 0.5 * params.eta2 * fid * fid;
  };
  double obj = objective(st.u, r_s);
  local.initial_objective = obj;

  Sub2State best = st;
  double best_obj = obj;

  for (int sweep = 0; sweep < params.inner_iters; ++sweep) {
    VecField s_next = dual_step(st.s, r_s, params.tau_s);
    local.dual_change = max_cell_change(s_next, st.s);
    st.s = std::move(s_next);
    local.sweeps = sweep + 1;

    ScalarField u_next = sub2_primal_from_dual(params, f, st);
    local.primal_step = norm_l2(u_next - st.u);
    st.u = std::move(u_next);
    r_s = n - grad(st.u);
    const double prev_obj = obj;
    obj = objective(st.u, r_s);
    if (obj > prev_obj) ++local.objective_increases;
    if (obj <= best_obj) {
      best = st;
      best_obj = obj;
    }
    if (local.dual_change <= params.inner_tol) {
      local.converged = true;
      break;
    }
  }

  local.final_objective = best_obj;
  if (info != nullptr) *info = local;
  return best;
}

}  // namespace tvstokes
