#include "hcont/stepcontrol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hcont/corrector.hpp"

namespace hcont {

void ControllerConstants::validate() const {
  if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in (0, 1]");
  if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("shrink factor must lie in (0, 1)");
  if (expand_after <= 0) throw std::invalid_argument("expansion count must be positive");
  if (!(dt_min > 0.0) || !(dt_max >= dt_min)) throw std::invalid_argument("need 0 < dt_min <= dt_max");
  if (!(dt_initial >= dt_min && dt_initial <= dt_max)) throw std::invalid_argument("initial step outside bounds");
  if (!(omega_initial > 0.0) || !(omega_floor > 0.0)) throw std::invalid_argument("omega values must be positive");
  if (!(omega_decay >= 0.0 && omega_decay <= 1.0)) throw std::invalid_argument("omega decay must lie in [0, 1]");
  if (!(error_floor > 0.0)) throw std::invalid_argument("error floor must be positive");
}

std::string_view to_string(ControllerKind kind) {
  return kind == ControllerKind::adaptive ? "adaptive" : "simple";
}

ControllerKind parse_controller(std::string_view name) {
  if (name == "adaptive" || name == "new") return ControllerKind::adaptive;
  if (name == "simple" || name == "old") return ControllerKind::simple;
  throw std::invalid_argument("unknown controller: " + std::string(name));
}

double contraction_gauge(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("contraction gauge needs a non-negative argument");
  // sqrt(4x + 1) - 1 rewritten to avoid cancellation.
  return 4.0 * x / (std::sqrt(4.0 * x + 1.0) + 1.0);
}

double target_contraction(int newton_steps, double omega, double tau) {
  if (newton_steps < 1) throw std::invalid_argument("need at least one Newton step");
  if (!(omega >= 0.0)) throw std::invalid_argument("omega must be non-negative");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const double half = 0.5 * omega;
  const double value = std::sqrt(half) * std::pow(tau / (1.0 + half * tau), 1.0 / (2.0 * newton_steps));
  return std::min(value, 1.0);
}

double max_feasible_step(double omega, double eta, int order, int newton_steps, double tau, double remaining) {
  if (!(omega > 0.0) || !(eta > 0.0)) throw std::invalid_argument("omega and eta must be positive");
  if (order < 1) throw std::invalid_argument("predictor order must be positive");
  const double g = contraction_gauge(target_contraction(newton_steps, omega, tau));
  return std::min(std::pow(g / (omega * eta), 1.0 / order), remaining);
}

double correction_step(double dt, std::optional<double> theta0, double omega, int order, int newton_steps,
                       double tau) {
  const double delta = target_contraction(newton_steps, omega, tau);
  if (theta0 && *theta0 > delta) {
    return std::pow(contraction_gauge(delta) / contraction_gauge(*theta0), 1.0 / order) * dt;
  }
  return 0.5 * dt;
}

double prediction_step(double dt, double omega, double prediction_error, int order, int newton_steps, double tau,
                       double mu) {
  if (!(omega > 0.0) || !(prediction_error > 0.0)) {
    throw std::invalid_argument("omega and prediction error must be positive");
  }
  const double g = contraction_gauge(target_contraction(newton_steps, omega, tau));
  return mu * std::pow(g / (omega * prediction_error), 1.0 / order) * dt;
}

// ---------------------------------------------------------------------------

AdaptiveController::AdaptiveController(const ControllerConstants& constants, int order, int newton_steps,
                                       double tau)
    : c_(constants), order_(order), newton_steps_(newton_steps), tau_(tau) {
  c_.validate();
  if (order < 1) throw std::invalid_argument("predictor order must be positive");
  if (newton_steps < 1) throw std::invalid_argument("need at least one Newton step");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  omega_ = std::max(c_.omega_initial, c_.omega_floor);
  dt_ = c_.dt_initial;
}

double AdaptiveController::clamp(double dt, double upper) const {
  const double hi = std::max(c_.dt_min, std::min(c_.dt_max, upper));
  return std::clamp(dt, c_.dt_min, hi);
}

double AdaptiveController::on_success(std::span<const double> correction_norms, double prediction_error,
                                      double dt_used, double remaining, double x_norm) {
  update_omega(correction_norms);

  const double error = std::max(prediction_error, c_.error_floor * (1.0 + x_norm));
  eta_prev_ = eta_curr_;
  eta_curr_ = error / std::pow(dt_used, order_);

  // Linear extrapolation of eta, never below the latest estimate.
  double adjusted = error;
  if (eta_prev_) {
    const double extrapolated = std::max(2.0 * *eta_curr_ - *eta_prev_, *eta_curr_);
    adjusted = error * (extrapolated / *eta_curr_);
  }
  dt_ = clamp(prediction_step(dt_used, omega_, adjusted, order_, newton_steps_, tau_, c_.mu), remaining);
  return dt_;
}

void AdaptiveController::update_omega(std::span<const double> correction_norms) {
  if (const auto estimate = omega_estimate(correction_norms)) {
    omega_ = std::max(*estimate, c_.omega_decay * omega_);
  }
  omega_ = std::max(omega_, c_.omega_floor);
}

double AdaptiveController::on_failure(std::optional<double> theta0, double dt_used,
                                      std::span<const double> correction_norms) {
  update_omega(correction_norms);
  double next = correction_step(dt_used, theta0, omega_, order_, newton_steps_, tau_);
  // Scaled like the prediction; otherwise retries can settle just above delta.
  if (theta0 && *theta0 > target_contraction(newton_steps_, omega_, tau_)) next *= c_.mu;
  dt_ = std::max(std::min(next, dt_used), c_.dt_min);
  return dt_;
}

SimpleController::SimpleController(const ControllerConstants& constants) : c_(constants), dt_(constants.dt_initial) {
  c_.validate();
}

double SimpleController::update(bool accepted) {
  if (!accepted) {
    dt_ *= c_.shrink;
    successes_ = 0;
  } else if (++successes_ >= c_.expand_after) {
    dt_ /= c_.shrink;
    successes_ = 0;
  }
  dt_ = std::clamp(dt_, c_.dt_min, c_.dt_max);
  return dt_;
}

}  // namespace hcont
