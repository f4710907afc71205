#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tvstokes/field.hpp"
#include "tvstokes/solvers.hpp"

namespace tvstokes::oracle {

// Brute-force reference minimizers for tiny instances. Everything here is
// built from its own sparse difference matrices (Eigen) and never calls the
// production operators, so agreement between the two is evidence rather than
// a tautology.

enum class Objective { sub1, sub2, joint };

/// Instance with every |v| replaced by sqrt(|v|^2 + epsilon^2).
///
/// sub1:  min_n alpha |grad n| + eta1/2 ||n - grad f||^2 + beta |n - grad u|
///        over gradient fields n = grad(phi), which makes Pi n = n exact.
/// sub2:  min_u beta |grad u - n| + eta2/2 ||u - f||^2 for the given n.
/// joint: the full model over (phi, u).
struct SmoothedProblem {
  double epsilon = 1e-6;
  Objective objective = Objective::joint;
  Params params;
  ScalarField f;
  /// Coupling target of sub1.
  std::optional<ScalarField> u_fixed;
  /// Fixed field of sub2.
  std::optional<VecField> n_fixed;

  static SmoothedProblem sub1(const Params& params, ScalarField f, ScalarField u,
                              double epsilon = 1e-6);
  static SmoothedProblem sub2(const Params& params, ScalarField f, VecField n,
                              double epsilon = 1e-6);
  static SmoothedProblem joint(const Params& params, ScalarField f,
                               double epsilon = 1e-6);
};

struct OracleResult {
  /// Set for sub1 and joint.
  std::optional<VecField> n;
  /// Set for sub2 and joint.
  std::optional<ScalarField> u;
  /// Smoothed objective at the returned point.
  double objective = 0.0;
  double grad_norm = 0.0;
  int steps = 0;
  /// False when the budget ran out (or the line search stalled) before
  /// grad_norm <= step_tol.
  bool converged = false;
};

/// Damped Newton with Armijo backtracking on the smoothed objective, with
/// epsilon continuation from 1e-2 down to prob.epsilon. Refuses instances
/// larger than max_cells.
OracleResult oracle_minimize(const SmoothedProblem& prob, int max_steps = 2000,
                             double step_tol = 1e-9, std::size_t max_cells = 64);

/// The smoothed objective at a point (n ignored for sub2, u for sub1).
double smoothed_objective(const SmoothedProblem& prob, const VecField* n,
                          const ScalarField* u);

struct AdjointnessReport {
  std::size_t height = 0;
  std::size_t width = 0;
  int trials = 0;
  // Each entry is the largest normalized violation over all trials.
  double grad_div = 0.0;
  double jacobian_div_tensor = 0.0;
  double projector_idempotency = 0.0;
  double projector_self_adjoint = 0.0;
  double projector_fixed_point = 0.0;

  double max_violation() const;
  std::string to_text() const;
  std::string to_csv() const;
};

/// Seeded random checks of the discrete identities the dual solvers rely on.
/// Violations are divided by the natural scale of each identity (products of
/// the norms involved), so 1e-16-level values mean exact up to round-off.
/// With zero_fields set, all probes are zero and every violation is 0.
AdjointnessReport adjointness_suite(std::size_t height, std::size_t width,
                                    int trials, std::uint64_t seed,
                                    bool zero_fields = false);

}  // namespace tvstokes::oracle
