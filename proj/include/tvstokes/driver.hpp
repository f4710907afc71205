#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tvstokes/field.hpp"
#include "tvstokes/projector.hpp"
#include "tvstokes/solvers.hpp"

namespace tvstokes {

/// H = g + l split into its block terms:
///   g1 = alpha |grad Pi n| + beta |Pi n - grad u|   (the whole nonsmooth part)
///   g2 = beta |grad u - Pi n|                       (its u-dependent term)
///   l1 = eta1/2 ||n - grad f||^2,  l2 = eta2/2 ||u - f||^2
/// so H = g1 + l1 + l2.
struct Energy {
  double H = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
};

Energy energy_total(const Params& params, const PoissonPlan& plan,
                    const ScalarField& f, const VecField& n, const ScalarField& u);

enum class Stage { half, full };

const char* stage_name(Stage s);

struct TraceRecord {
  double k = 0.0;  // 0, 0.5, 1, 1.5, ...
  Stage stage = Stage::full;
  Energy energy;
  // Approximate ||G^1||, ||G^2||; NaN when diagnostics are off.
  double gradmap1 = 0.0;
  double gradmap2 = 0.0;
  /// Relative change of the block updated by this half step.
  double primal_change = 0.0;
  std::optional<double> psnr;

  // Not serialized.
  double probe_residual1 = 0.0;
  double probe_residual2 = 0.0;
  /// ||x - x_final|| with x = (n, u), x_final the last full iterate of the run.
  double distance_to_final = 0.0;
};

struct Trace {
  double eta1 = 1.0;
  double eta2 = 1.0;
  std::vector<TraceRecord> records;

  /// Records with stage == full, in order (x_0, x_1, ...).
  std::vector<const TraceRecord*> full_records() const;
};

struct DenoiseOptions {
  /// Noise-free reference for the psnr column.
  std::optional<ScalarField> clean;
  /// Reuse the previous outer iteration's duals as the inner starting point.
  bool warm_start = true;
  /// Compute gradient-mapping probes for every record.
  bool diagnostics = true;
  /// Probe budget; 0 means params.inner_iters.
  int probe_iters = 0;
};

struct DenoiseResult {
  ScalarField u;
  VecField n;
  Trace trace;
  int outer_iterations = 0;
};

/// Alternating minimization: u_0 = f, then per outer iteration an n-block
/// solve (recorded as the half iterate) followed by a u-block solve (the full
/// iterate). Stops after outer_iters or when
/// ||u_k - u_{k-1}|| / max(||u_k||, 1e-12) <= outer_tol.
DenoiseResult denoise(const Params& params, const ScalarField& f,
                      const DenoiseOptions& options = {});

struct LrtResult {
  ScalarField u;
  VecField n;
};

/// The two-step pipeline: smooth grad f under the curl-free constraint with
/// the coupling target grad f, then reconstruct u from that field. Both steps
/// cold-start with the same budgets as denoise's first outer iteration.
LrtResult lrt_reference(const Params& params, const PoissonPlan& plan,
                        const ScalarField& f);

struct GradientMapping {
  double gm1 = 0.0;
  double gm2 = 0.0;
  /// Last-sweep primal step of each probe; measures how far the probe is
  /// from its fixed point.
  double residual1 = 0.0;
  double residual2 = 0.0;
};

/// Partial gradient mappings at x = (n, u).
///
/// Because l1 is quadratic with curvature eta1, the prox-gradient point
/// prox_{g1/eta1}(n - grad l1(n) / eta1) is the minimizer of the n-block with
/// u fixed, so gm1 = eta1 ||n - T1|| where T1 comes from probe_iters sweeps of
/// the n-block solver. gm2 is the same construction on the u-block with eta2.
/// Optional warm states seed the probes.
GradientMapping gradient_mapping(const Params& params, const PoissonPlan& plan,
                                 const ScalarField& f, const VecField& n,
                                 const ScalarField& u, int probe_iters,
                                 const Sub1State* warm1 = nullptr,
                                 const Sub2State* warm2 = nullptr);

// ---- convergence diagnostics ------------------------------------------------

struct RateRow {
  int k = 0;
  double gap = 0.0;    // A_k = H(x_k) - H*
  double bound = 0.0;  // C / k (k >= 1)
  bool monotone_ok = true;
  bool recursion_ok = true;  // A_k - A_{k+1} >= gamma A_{k+1}^2
  bool bound_ok = true;  // A_k <= C / k
};

struct RateReport {
  double h_star = 0.0;
  double m_hat = 0.0;
  double gamma = 0.0;
  double constant = 0.0;  // C = max(2 A_0, 3 min(eta1, eta2) M^2)
  std::vector<RateRow> rows;
  int monotone_failures = 0;
  int recursion_failures = 0;
  int bound_failures = 0;

  bool monotone() const { return monotone_failures == 0; }
  bool recursion() const { return recursion_failures == 0; }
  bool bound() const { return bound_failures == 0; }
};

/// Checks the sublinear-rate inequalities on the full iterates of a trace.
/// h_star must not exceed the smallest H in the trace; at least 10 full
/// records are required.
RateReport rate_check(const Trace& trace, double h_star);

/// Same checks on a raw sequence: energies[k] = H(x_k), distances[k] =
/// ||x_k - x_ref|| (M-hat is their max).
RateReport rate_check(std::span<const double> energies,
                      std::span<const double> distances, double h_star,
                      double eta_min);

struct DecreaseRow {
  double k = 0.0;  // k of the record the step starts from
  int block = 1;   // 1: n-block step, 2: u-block step
  double drop = 0.0;
  double bound = 0.0;  // gm^2 / (2 eta)
  double slack = 0.0;  // 10 eta residual^2
  bool ok = true;
};

struct DecreaseReport {
  std::vector<DecreaseRow> rows;
  int passed = 0;

  double pass_rate() const {
    return rows.empty() ? 1.0 : static_cast<double>(passed) / rows.size();
  }
};

/// Per half step: H(before) - H(after) + slack >= gm^2 / (2 eta), using the
/// gradient mapping of the block that the step updates. Needs a trace built
/// with diagnostics on.
DecreaseReport sufficient_decrease_check(const Trace& trace);

/// Number of consecutive record pairs with H_next > H_prev + rel_slack * |H_0|.
int energy_chain_violations(const Trace& trace, double rel_slack = 1e-9);

/// 10 log10(1 / MSE), peak 1.
double psnr(const ScalarField& u, const ScalarField& clean);

}  // namespace tvstokes
