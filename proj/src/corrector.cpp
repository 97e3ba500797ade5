#include "hcont/corrector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hcont/linalg.hpp"

namespace hcont {

std::string_view to_string(TerminationCriterion c) {
  switch (c) {
    case TerminationCriterion::a_posteriori: return "a_posteriori";
    case TerminationCriterion::a_priori: return "a_priori";
    case TerminationCriterion::simplified_a_priori: return "simplified_a_priori";
  }
  return "unknown";
}

TerminationCriterion parse_criterion(std::string_view name) {
  if (name == "a_posteriori" || name == "a-posteriori") return TerminationCriterion::a_posteriori;
  if (name == "a_priori" || name == "a-priori") return TerminationCriterion::a_priori;
  if (name == "simplified_a_priori" || name == "simplified-a-priori" || name == "simplified") {
    return TerminationCriterion::simplified_a_priori;
  }
  throw std::invalid_argument("unknown termination criterion: " + std::string(name));
}

std::string_view to_string(CorrectorStatus s) {
  switch (s) {
    case CorrectorStatus::converged: return "converged";
    case CorrectorStatus::budget_exhausted: return "budget_exhausted";
    case CorrectorStatus::contraction_failure: return "contraction_failure";
    case CorrectorStatus::singular_jacobian: return "singular_jacobian";
    case CorrectorStatus::non_finite: return "non_finite";
  }
  return "unknown";
}

void CorrectorOptions::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("corrector tolerance must be positive");
  if (max_newton_iters < 1) throw std::invalid_argument("corrector needs at least one full Newton step");
}

std::optional<double> omega_estimate(std::span<const double> correction_norms) {
  if (correction_norms.size() < 2) return std::nullopt;
  double omega = 0.0;
  for (std::size_t k = 1; k < correction_norms.size(); ++k) {
    const double prev = correction_norms[k - 1];
    if (prev > 0.0) omega = std::max(omega, 2.0 * correction_norms[k] / (prev * prev));
  }
  return omega;
}

namespace {

constexpr double kContractionLimit = 0.5;
constexpr double kNoiseFactor = 16.0;

class NewtonRun {
 public:
  NewtonRun(const PathSystem& h, const CVector& x0, double t, CorrectorResult& result)
      : h_(h), t_(t), result_(result), x_(x0) {
    result_.iterates.push_back(x0);
    result_.noise_floor = kNoiseFactor * std::numeric_limits<double>::epsilon() * (1.0 + norm2(x0));
  }

  // Factorizes J(x) and computes dx = -J(x)^+ H(x). Returns false on failure.
  bool full_step() {
    h_.evaluate_and_jacobian(x_, t_, value_, jac_);
    if (!value_.allFinite() || !jac_.allFinite()) return fail(CorrectorStatus::non_finite);
    fac_.compute(jac_);
    if (fac_.rank_deficient()) return fail(CorrectorStatus::singular_jacobian);
    fac_.solve(value_, dx_);
    dx_ = -dx_;
    return record();
  }

  // dx = -J(x_prev)^+ H(x), reusing the last factorization.
  bool simplified_step() {
    h_.evaluate(x_, t_, value_);
    if (!value_.allFinite()) return fail(CorrectorStatus::non_finite);
    fac_.solve(value_, dx_);
    dx_ = -dx_;
    return record();
  }

  [[nodiscard]] double last_norm() const { return result_.correction_norms.back(); }
  [[nodiscard]] bool negligible_correction() const { return last_norm() <= result_.noise_floor; }

  void finish(bool converged, double bound) {
    result_.converged = converged;
    result_.accuracy_bound = bound;
    result_.status = converged ? CorrectorStatus::converged : CorrectorStatus::budget_exhausted;
  }

 private:
  bool fail(CorrectorStatus status) {
    result_.converged = false;
    result_.status = status;
    result_.accuracy_bound = std::numeric_limits<double>::infinity();
    return false;
  }

  bool record() {
    ++result_.iterations;
    const double norm = norm2(dx_);
    if (!std::isfinite(norm)) return fail(CorrectorStatus::non_finite);
    auto& norms = result_.correction_norms;
    norms.push_back(norm);
    x_ += dx_;
    result_.iterates.push_back(x_);
    if (norms.size() >= 2) {
      const double prev = norms[norms.size() - 2];
      const double theta = prev > 0.0 ? norm / prev : 0.0;
      result_.thetas.push_back(theta);
      if (theta >= kContractionLimit && norm > result_.noise_floor) {
        return fail(CorrectorStatus::contraction_failure);
      }
    }
    return true;
  }

  const PathSystem& h_;
  double t_;
  CorrectorResult& result_;
  CVector x_;
  CVector value_;
  CVector dx_;
  CMatrix jac_;
  Factorization fac_;
};

// Criterion value, or +inf when the contraction is too weak for the formula.
double guarded_quotient(double numerator, double denominator) {
  return denominator > 0.0 ? numerator / denominator : std::numeric_limits<double>::infinity();
}

}  // namespace

CorrectorResult newton_correct(const PathSystem& h, const CVector& x0, double t, const CorrectorOptions& opts) {
  opts.validate();
  CorrectorResult result;
  result.accuracy_bound = std::numeric_limits<double>::infinity();
  NewtonRun run(h, x0, t, result);
  const int n = opts.max_newton_iters;
  const double tau = opts.tau;

  auto done = [&](bool converged, double bound) {
    // Nothing below the noise floor is resolvable.
    run.finish(converged, std::max(bound, result.noise_floor));
    result.omega_est = omega_estimate(result.significant_norms());
    return result;
  };
  auto failed = [&] {
    result.omega_est = omega_estimate(result.significant_norms());
    return result;
  };

  switch (opts.criterion) {
    case TerminationCriterion::a_posteriori:
      for (int k = 0; k <= n; ++k) {
        if (!run.full_step()) return failed();
        if (run.negligible_correction()) return done(true, result.noise_floor);
        if (k >= 1) {
          const double theta = result.thetas.back();
          const double bound = guarded_quotient(result.correction_norms[k - 1], 1.0 - theta);
          result.accuracy_bound = bound;
          if (bound <= tau) return done(true, bound);
        }
      }
      return done(false, result.accuracy_bound);

    case TerminationCriterion::a_priori:
      for (int k = 0; k <= n; ++k) {
        if (!run.full_step()) return failed();
        if (run.negligible_correction()) return done(true, result.noise_floor);
        if (k >= 1) {
          const double theta = result.thetas.back();
          const double bound = guarded_quotient(run.last_norm(), 1.0 - 2.0 * theta * theta);
          result.accuracy_bound = bound;
          if (bound <= tau) return done(true, bound);
        }
      }
      return done(false, result.accuracy_bound);

    case TerminationCriterion::simplified_a_priori: {
      for (int k = 0; k < n; ++k) {
        if (!run.full_step()) return failed();
        if (run.negligible_correction()) return done(true, result.noise_floor);
      }
      if (!run.simplified_step()) return failed();
      const double theta = result.thetas.back();
      const double bound = guarded_quotient(run.last_norm(), 1.0 - 2.0 * theta * theta);
      return done(bound <= tau, bound);
    }
  }
  return failed();
}

CVector refine(const PathSystem& h, const CVector& x, double t, double tol, int max_iters) {
  CVector y = x;
  CVector value;
  CVector dx;
  CMatrix jac;
  Factorization fac;
  double prev_norm = -1.0;
  for (int k = 0; k < max_iters; ++k) {
    h.evaluate_and_jacobian(y, t, value, jac);
    fac.compute(jac);
    if (fac.rank_deficient()) throw SingularMatrixError("singular Jacobian during refinement");
    fac.solve(value, dx);
    y -= dx;
    const double norm = norm2(dx);
    if (!std::isfinite(norm)) throw DivergenceError("non-finite Newton correction during refinement");
    if (norm <= tol) return y;
    // Corrections at rounding level cannot shrink further.
    if (norm <= 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + norm2(y))) return y;
    if (prev_norm >= 0.0 && norm > prev_norm) throw DivergenceError("Newton refinement is not contracting");
    prev_norm = norm;
  }
  return y;
}

}  // namespace hcont
