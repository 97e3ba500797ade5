#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hcont/homotopy.hpp"
#include "hcont/types.hpp"

namespace hcont {

enum class PredictorKind { euler, heun, rk4, pade21 };

/// Order p in |x(t) - x_hat(t)| <= eta * dt^p. An explicit Runge-Kutta
/// method of ODE order m is a predictor of order m + 1.
[[nodiscard]] int predictor_order(PredictorKind kind);
[[nodiscard]] std::string_view to_string(PredictorKind kind);
[[nodiscard]] PredictorKind parse_predictor(std::string_view name);

/// Tangent at (x, t) kept across a rejected step, where x and t are unchanged.
struct TangentCache {
  double t = 0.0;
  CVector x;
  CVector tangent;
  bool valid = false;

  [[nodiscard]] bool matches(const CVector& point, double time) const {
    return valid && time == t && point.size() == x.size() && point == x;
  }
  void store(const CVector& point, double time, const CVector& dx) {
    x = point;
    t = time;
    tangent = dx;
    valid = true;
  }
  void invalidate() { valid = false; }
};

/// dx/dt = -H_x^+ H_t. Throws SingularMatrixError on a rank deficient H_x.
[[nodiscard]] CVector tangent(const PathSystem& h, const CVector& x, double t);

struct Prediction {
  CVector point;
  /// Linear solves against H_x performed for this prediction.
  int tangent_solves = 0;
};

/// Predicts x at t - dt (tracking runs toward smaller t). Uses the cached
/// tangent when it matches (x, t) and refreshes the cache otherwise.
/// Throws SingularMatrixError if any stage meets a rank deficient H_x.
[[nodiscard]] Prediction predict(PredictorKind kind, const PathSystem& h, const CVector& x, double t, double dt,
                                 TangentCache& cache);

/// Least-squares slope of log|x(t - dt) - x_hat| against log dt over
/// dt in [1e-3, 1e-1]; the reference x(t - dt) is computed by a finely
/// subdivided RK4 march with Newton polishing. Absent when fewer than three
/// step sizes leave an error above the rounding floor.
[[nodiscard]] std::optional<double> empirical_order(PredictorKind kind, const PathSystem& h, const CVector& x,
                                                    double t);

}  // namespace hcont
