#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hcont/homotopy.hpp"
#include "hcont/types.hpp"

namespace hcont {

enum class TerminationCriterion {
  a_posteriori,         // |dx^k| / (1 - theta_k) <= tau
  a_priori,             // |dx^k| / (1 - 2 theta_{k-1}^2) <= tau
  simplified_a_priori,  // N full steps, then one step reusing the last factorization
};

[[nodiscard]] std::string_view to_string(TerminationCriterion c);
[[nodiscard]] TerminationCriterion parse_criterion(std::string_view name);

struct CorrectorOptions {
  double tau = 1e-7;
  /// Full Newton steps N; at most N + 1 linear solves are performed.
  int max_newton_iters = 2;
  TerminationCriterion criterion = TerminationCriterion::simplified_a_priori;

  void validate() const;
};

enum class CorrectorStatus {
  converged,
  budget_exhausted,     // criterion unmet after N + 1 iterations
  contraction_failure,  // some theta reached 1/2
  singular_jacobian,
  non_finite,
};

[[nodiscard]] std::string_view to_string(CorrectorStatus s);

struct CorrectorResult {
  /// x^0 (the input), x^1, ...; the last entry is the returned point.
  std::vector<CVector> iterates;
  /// |dx^0|, |dx^1|, ...; under the simplified criterion the last norm is
  /// that of the simplified correction.
  std::vector<double> correction_norms;
  /// thetas[k] = correction_norms[k+1] / correction_norms[k].
  std::vector<double> thetas;
  std::optional<double> omega_est;
  /// Corrections at or below this size are rounding noise.
  double noise_floor = 0.0;
  bool converged = false;
  /// Left-hand side of the termination criterion that was evaluated last
  /// (+inf when it was never evaluated).
  double accuracy_bound = 0.0;
  CorrectorStatus status = CorrectorStatus::budget_exhausted;
  /// Number of linear solves performed.
  int iterations = 0;

  [[nodiscard]] const CVector& point() const { return iterates.back(); }
  /// Leading correction norms above the noise floor; ratios of later norms carry no information.
  [[nodiscard]] std::span<const double> significant_norms() const {
    std::size_t n = 0;
    while (n < correction_norms.size() && correction_norms[n] > noise_floor) ++n;
    return std::span<const double>(correction_norms).first(n);
  }
  [[nodiscard]] std::optional<double> theta0() const {
    return thetas.empty() ? std::nullopt : std::optional<double>(thetas.front());
  }
};

/// Bounded Newton (Gauss-Newton for tall systems) corrector at fixed t.
/// A correction at rounding level (|dx| <= 16 eps (1 + |x0|)) ends the run as
/// converged, with the noise floor as the accuracy bound.
[[nodiscard]] CorrectorResult newton_correct(const PathSystem& h, const CVector& x0, double t,
                                             const CorrectorOptions& opts);

/// max_k 2 |dx^k| / |dx^{k-1}|^2, absent with fewer than two norms.
[[nodiscard]] std::optional<double> omega_estimate(std::span<const double> correction_norms);

/// Newton polishing until |dx| <= tol or `max_iters` corrections were applied.
/// Throws SingularMatrixError or DivergenceError (contraction above 1).
[[nodiscard]] CVector refine(const PathSystem& h, const CVector& x, double t, double tol, int max_iters);

}  // namespace hcont
