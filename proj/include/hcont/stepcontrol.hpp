#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace hcont {

/// Tunable constants shared by both step size controllers.
struct ControllerConstants {
  double mu = 0.7;           // safety factor on predicted and corrected steps
  double shrink = 0.5;       // simple controller: factor a on rejection
  int expand_after = 5;      // simple controller: successes M before expanding
  double dt_min = 1e-14;
  double dt_max = 0.25;
  double dt_initial = 0.1;
  double omega_initial = 1.0;
  double omega_floor = 1e-8;
  double omega_decay = 0.5;  // omega <- max(estimate, decay * omega)
  double error_floor = 1e-14;  // relative to 1 + |x|

  void validate() const;
};

enum class ControllerKind { adaptive, simple };

[[nodiscard]] std::string_view to_string(ControllerKind kind);
[[nodiscard]] ControllerKind parse_controller(std::string_view name);

// ---------------------------------------------------------------------------
// Closed forms

/// sqrt(4x + 1) - 1, evaluated without cancellation for small x.
[[nodiscard]] double contraction_gauge(double x);

/// Largest first-step contraction that still lets `newton_steps` plain Newton
/// steps reach accuracy `tau` under Lipschitz constant `omega`; capped at 1.
[[nodiscard]] double target_contraction(int newton_steps, double omega, double tau);

/// Largest step a predictor of `order` with error constant `eta` may take so
/// that Newton still converges to `tau` within newton_steps + 1 iterations.
[[nodiscard]] double max_feasible_step(double omega, double eta, int order, int newton_steps, double tau,
                                       double remaining);

/// Step size after a rejection: shrink by (gauge(target)/gauge(theta0))^(1/p)
/// when theta0 exceeds the target contraction, else halve.
[[nodiscard]] double correction_step(double dt, std::optional<double> theta0, double omega, int order,
                                     int newton_steps, double tau);

/// Step size after an acceptance, from the (extrapolated) prediction error.
[[nodiscard]] double prediction_step(double dt, double omega, double prediction_error, int order, int newton_steps,
                                     double tau, double mu);

// ---------------------------------------------------------------------------
// Controllers

/// Per-path adaptive controller driven by estimates of the local Lipschitz
/// constant and of the predictor error constant.
class AdaptiveController {
 public:
  AdaptiveController(const ControllerConstants& constants, int order, int newton_steps, double tau);

  [[nodiscard]] double dt() const { return dt_; }
  [[nodiscard]] double omega() const { return omega_; }
  [[nodiscard]] std::optional<double> eta_prev() const { return eta_prev_; }
  [[nodiscard]] std::optional<double> eta_curr() const { return eta_curr_; }
  [[nodiscard]] int order() const { return order_; }

  /// Accepted step of length `dt_used` whose corrector produced
  /// `correction_norms` and whose prediction missed by `prediction_error`.
  double on_success(std::span<const double> correction_norms, double prediction_error, double dt_used,
                    double remaining, double x_norm);

  /// Rejected step; returns the step to retry with, never above `dt_used`.
  /// Full Newton corrections of the rejected run, if any, update omega first.
  double on_failure(std::optional<double> theta0, double dt_used, std::span<const double> correction_norms = {});

 private:
  double clamp(double dt, double upper) const;
  void update_omega(std::span<const double> correction_norms);

  ControllerConstants c_;
  int order_;
  int newton_steps_;
  double tau_;
  double omega_;
  std::optional<double> eta_prev_;
  std::optional<double> eta_curr_;
  double dt_;
};

/// Classic controller: multiply by a on rejection, divide by a after M
/// consecutive acceptances.
class SimpleController {
 public:
  explicit SimpleController(const ControllerConstants& constants);

  [[nodiscard]] double dt() const { return dt_; }
  [[nodiscard]] int consecutive_successes() const { return successes_; }

  double update(bool accepted);

 private:
  ControllerConstants c_;
  int successes_ = 0;
  double dt_;
};

}  // namespace hcont
