#include "tvstokes/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tvstokes/diff_ops.hpp"

namespace tvstokes {

namespace {

constexpr double kRelEps = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double relative_change(double diff, double scale) {
  return diff / std::max(scale, kRelEps);
}

double joint_distance(const VecField& n_a, const ScalarField& u_a,
                      const VecField& n_b, const ScalarField& u_b) {
  const double dn = norm_l2(n_a - n_b);
  const double du = norm_l2(u_a - u_b);
  return std::sqrt(dn * dn + du * du);
}

}  // namespace

Energy energy_total(const Params& params, const PoissonPlan& plan,
                    const ScalarField& f, const VecField& n, const ScalarField& u) {
  plan.require_shape(f);
  plan.require_shape(n);
  plan.require_shape(u);
  const VecField pn = project(plan, n);
  const double tv_n = sum_pointwise_euclid(jacobian(pn));
  const double coupling = sum_pointwise_euclid(grad(u) - pn);
  const double dn = norm_l2(n - grad(f));
  const double du = norm_l2(u - f);

  Energy e;
  e.g2 = params.beta * coupling;
  e.g1 = params.alpha * tv_n + e.g2;
  e.l1 = 0.5 * params.eta1 * dn * dn;
  e.l2 = 0.5 * params.eta2 * du * du;
  e.H = e.g1 + e.l1 + e.l2;
  return e;
}

const char* stage_name(Stage s) { return s == Stage::half ? "half" : "full"; }

std::vector<const TraceRecord*> Trace::full_records() const {
  std::vector<const TraceRecord*> out;
  for (const auto& r : records) {
    if (r.stage == Stage::full) out.push_back(&r);
  }
  return out;
}

double psnr(const ScalarField& u, const ScalarField& clean) {
  u.require_same_grid(clean, "psnr");
  const double err = norm_l2(u - clean);
  const double mse = err * err / static_cast<double>(u.cells());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

GradientMapping gradient_mapping(const Params& params, const PoissonPlan& plan,
                                 const ScalarField& f, const VecField& n,
                                 const ScalarField& u, int probe_iters,
                                 const Sub1State* warm1, const Sub2State* warm2) {
  if (probe_iters < 1) {
    throw std::invalid_argument("gradient_mapping: probe_iters must be >= 1");
  }
  Params probe = params;
  probe.inner_iters = probe_iters;

  GradientMapping gm;
  SolveInfo info1;
  const Sub1State t1 = solve_sub1(probe, plan, f, u, warm1, &info1);
  gm.gm1 = params.eta1 * norm_l2(n - t1.n);
  gm.residual1 = info1.primal_step;

  SolveInfo info2;
  const Sub2State t2 = solve_sub2(probe, f, n, warm2, &info2);
  gm.gm2 = params.eta2 * norm_l2(u - t2.u);
  gm.residual2 = info2.primal_step;
  return gm;
}

LrtResult lrt_reference(const Params& params, const PoissonPlan& plan,
                        const ScalarField& f) {
  params.validate();
  // Step 1: coupling target grad(u_0) with u_0 = f.
  const Sub1State s1 = solve_sub1(params, plan, f, f);
  // Step 2: reconstruct from the smoothed field.
  const Sub2State s2 = solve_sub2(params, f, s1.n);
  return {s2.u, s1.n};
}

DenoiseResult denoise(const Params& params, const ScalarField& f,
                      const DenoiseOptions& options) {
  params.validate();
  if (!f.all_finite()) {
    throw std::invalid_argument("denoise: input image contains NaN or Inf");
  }
  if (options.clean && !options.clean->same_grid(f)) {
    throw std::invalid_argument("denoise: clean reference shape differs from input");
  }
  const std::size_t h = f.height();
  const std::size_t w = f.width();
  const PoissonPlan plan(h, w);
  const int probe_iters =
      options.probe_iters > 0 ? options.probe_iters : params.inner_iters;

  Trace trace;
  trace.eta1 = params.eta1;
  trace.eta2 = params.eta2;

  ScalarField u = f;
  VecField n = grad(f);  // primal of the zero duals
  Sub1State st1 = Sub1State::zero(h, w);
  Sub2State st2 = Sub2State::zero(h, w);
  st1.n = n;
  st2.u = u;
  bool have1 = false;
  bool have2 = false;

  // Iterates per record, for the distance column filled in at the end.
  std::vector<VecField> record_n;
  std::vector<ScalarField> record_u;

  auto push = [&](double k, Stage stage, double change) {
    TraceRecord rec;
    rec.k = k;
    rec.stage = stage;
    rec.energy = energy_total(params, plan, f, n, u);
    rec.primal_change = change;
    if (options.diagnostics) {
      const bool warm1 = options.warm_start && have1;
      const bool warm2 = options.warm_start && have2;
      const GradientMapping gm =
          gradient_mapping(params, plan, f, n, u, probe_iters,
                           warm1 ? &st1 : nullptr, warm2 ? &st2 : nullptr);
      rec.gradmap1 = gm.gm1;
      rec.gradmap2 = gm.gm2;
      rec.probe_residual1 = gm.residual1;
      rec.probe_residual2 = gm.residual2;
    } else {
      rec.gradmap1 = kNaN;
      rec.gradmap2 = kNaN;
      rec.probe_residual1 = kNaN;
      rec.probe_residual2 = kNaN;
    }
    if (options.clean) rec.psnr = psnr(u, *options.clean);
    trace.records.push_back(rec);
    record_n.push_back(n);
    record_u.push_back(u);
  };

  push(0.0, Stage::full, 0.0);

  int k = 0;
  while (k < params.outer_iters) {
    ++k;
    st1 = solve_sub1(params, plan, f, u,
                     (options.warm_start && have1) ? &st1 : nullptr);
    have1 = true;
    const double dn = norm_l2(st1.n - n);
    n = st1.n;
    push(k - 0.5, Stage::half, relative_change(dn, norm_l2(n)));

    st2 = solve_sub2(params, f, n, (options.warm_start && have2) ? &st2 : nullptr);
    have2 = true;
    const double du = norm_l2(st2.u - u);
    u = st2.u;
    const double change = relative_change(du, norm_l2(u));
    push(static_cast<double>(k), Stage::full, change);

    if (change <= params.outer_tol) break;
  }

  for (std::size_t r = 0; r < trace.records.size(); ++r) {
    trace.records[r].distance_to_final =
        joint_distance(record_n[r], record_u[r], n, u);
  }

  return {std::move(u), std::move(n), std::move(trace), k};
}

// ---- convergence diagnostics ------------------------------------------------

RateReport rate_check(const Trace& trace, double h_star) {
  const auto full = trace.full_records();
  std::vector<double> energies;
  std::vector<double> distances;
  for (const TraceRecord* r : full) {
    energies.push_back(r->energy.H);
    distances.push_back(r->distance_to_final);
  }
  return rate_check(energies, distances, h_star, std::min(trace.eta1, trace.eta2));
}

RateReport rate_check(std::span<const double> energies,
                      std::span<const double> distances, double h_star,
                      double eta_min) {
  if (energies.size() < 10) {
    throw std::invalid_argument("rate_check: need at least 10 full iterates, got " +
                                std::to_string(energies.size()));
  }
  if (distances.size() != energies.size()) {
    throw std::invalid_argument("rate_check: energies and distances differ in length");
  }
  const double h_min = *std::min_element(energies.begin(), energies.end());
  if (h_star > h_min) {
    throw std::invalid_argument("rate_check: H* proxy exceeds the smallest energy in the trace");
  }

  RateReport rep;
  rep.h_star = h_star;
  rep.m_hat = *std::max_element(distances.begin(), distances.end());
  const double m2 = rep.m_hat * rep.m_hat;
  rep.gamma = m2 > 0.0 ? 1.0 / (2.0 * eta_min * m2)
                       : std::numeric_limits<double>::infinity();
  const double a0 = energies[0] - h_star;
  rep.constant = std::max(2.0 * a0, 3.0 * eta_min * m2);
  const double slack = 1e-9 * std::abs(energies[0]);

  for (std::size_t k = 0; k < energies.size(); ++k) {
    RateRow row;
    row.k = static_cast<int>(k);
    row.gap = energies[k] - h_star;
    if (k >= 1) {
      row.bound = rep.constant / static_cast<double>(k);
      row.bound_ok = row.gap <= row.bound + slack;
    }
    if (k + 1 < energies.size()) {
      const double next = energies[k + 1] - h_star;
      row.monotone_ok = next <= row.gap + slack;
      const double need = next == 0.0 ? 0.0 : rep.gamma * next * next;
      row.recursion_ok = row.gap - next + slack >= need;
    }
    rep.monotone_failures += row.monotone_ok ? 0 : 1;
    rep.recursion_failures += row.recursion_ok ? 0 : 1;
    rep.bound_failures += row.bound_ok ? 0 : 1;
    rep.rows.push_back(row);
  }
  return rep;
}

DecreaseReport sufficient_decrease_check(const Trace& trace) {
  DecreaseReport rep;
  const auto& recs = trace.records;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    const TraceRecord& from = recs[i];
    const TraceRecord& to = recs[i + 1];
    if (std::isnan(from.gradmap1) || std::isnan(from.gradmap2)) {
      throw std::invalid_argument(
          "sufficient_decrease_check: trace was recorded without diagnostics");
    }
    DecreaseRow row;
    row.k = from.k;
    row.drop = from.energy.H - to.energy.H;
    if (from.stage == Stage::full) {
      // x_k -> x_{k+1/2}: the n-block moved.
      row.block = 1;
      row.bound = from.gradmap1 * from.gradmap1 / (2.0 * trace.eta1);
      row.slack = 10.0 * trace.eta1 * from.probe_residual1 * from.probe_residual1;
    } else {
      row.block = 2;
      row.bound = from.gradmap2 * from.gradmap2 / (2.0 * trace.eta2);
      row.slack = 10.0 * trace.eta2 * from.probe_residual2 * from.probe_residual2;
    }
    row.ok = row.drop + row.slack >= row.bound;
    rep.passed += row.ok ? 1 : 0;
    rep.rows.push_back(row);
  }
  return rep;
}

int energy_chain_violations(const Trace& trace, double rel_slack) {
  if (trace.records.empty()) return 0;
  const double slack = rel_slack * std::abs(trace.records.front().energy.H);
  int bad = 0;
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    if (trace.records[i + 1].energy.H > trace.records[i].energy.H + slack) ++bad;
  }
  return bad;
}

}  // namespace tvstokes
