#include "hcont/predictor.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hcont/corrector.hpp"
#include "hcont/linalg.hpp"

namespace hcont {

int predictor_order(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::euler: return 2;
    case PredictorKind::heun: return 3;
    case PredictorKind::rk4: return 5;
    case PredictorKind::pade21: return 4;
  }
  throw std::invalid_argument("unknown predictor");
}

std::string_view to_string(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::euler: return "euler";
    case PredictorKind::heun: return "heun";
    case PredictorKind::rk4: return "rk4";
    case PredictorKind::pade21: return "pade21";
  }
  return "unknown";
}

PredictorKind parse_predictor(std::string_view name) {
  if (name == "euler") return PredictorKind::euler;
  if (name == "heun") return PredictorKind::heun;
  if (name == "rk4") return PredictorKind::rk4;
  if (name == "pade21") return PredictorKind::pade21;
  throw std::invalid_argument("unknown predictor: " + std::string(name));
}

namespace {

struct TangentSolver {
  const PathSystem& h;
  CVector value;
  CVector ht;
  CMatrix jac;
  Factorization fac;
  int solves = 0;

  // Factorizes H_x at (x, t) and returns the tangent.
  CVector at(const CVector& x, double t) {
    factor(x, t);
    return solve_tangent(x, t);
  }

  void factor(const CVector& x, double t) {
    h.evaluate_and_jacobian(x, t, value, jac);
    fac.compute(jac);
    if (fac.rank_deficient()) throw SingularMatrixError("singular Jacobian in predictor");
  }

  CVector solve_tangent(const CVector& x, double t) {
    h.derivative_t(x, t, ht);
    return solve(ht);
  }

  // Returns -H_x^+ rhs with the current factorization.
  CVector solve(const CVector& rhs) {
    ++solves;
    CVector out = fac.solve(rhs);
    return -out;
  }
};

CVector pade21(const CVector& x, double t, double s, TangentCache& cache, TangentSolver& ts) {
  ts.factor(x, t);
  if (!cache.matches(x, t)) cache.store(x, t, ts.solve_tangent(x, t));
  const CVector& c1 = cache.tangent;

  // Taylor coefficients c_k = x^(k)(t)/k! from the s^k coefficients of
  // H(x(s), t + s) = 0, each one linear in the newest unknown coefficient.
  const Eigen::Index n = x.size();
  std::array<CVector, 4> coeffs{x, c1, CVector::Zero(n), CVector::Zero(n)};
  std::array<CVector, 4> values;
  ts.h.evaluate_series(std::span<const CVector>(coeffs.data(), 3), t, std::span<CVector>(values.data(), 3));
  coeffs[2] = ts.solve(values[2]);
  ts.h.evaluate_series(std::span<const CVector>(coeffs.data(), 4), t, std::span<CVector>(values.data(), 4));
  coeffs[3] = ts.solve(values[3]);

  CVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex a0 = coeffs[0][i];
    const Complex a1 = coeffs[1][i];
    const Complex a2 = coeffs[2][i];
    const Complex a3 = coeffs[3][i];
    const Complex taylor = a0 + s * (a1 + s * (a2 + s * a3));
    if (a2 == Complex(0.0)) {
      out[i] = taylor;
      continue;
    }
    // [2/1] approximant (p0 + p1 s + p2 s^2) / (1 + q1 s) matching a0..a3.
    const Complex q1 = -a3 / a2;
    const Complex denom = 1.0 + q1 * s;
    if (std::abs(q1 * s) > 0.5) {
      out[i] = taylor;  // pole too close to the step
      continue;
    }
    const Complex p1 = a1 + q1 * a0;
    const Complex p2 = a2 + q1 * a1;
    out[i] = (a0 + s * (p1 + s * p2)) / denom;
  }
  return out;
}

}  // namespace

CVector tangent(const PathSystem& h, const CVector& x, double t) {
  TangentSolver ts{h, {}, {}, {}, {}, 0};
  return ts.at(x, t);
}

Prediction predict(PredictorKind kind, const PathSystem& h, const CVector& x, double t, double dt,
                   TangentCache& cache) {
  if (!(dt > 0.0)) throw std::invalid_argument("predictor step must be positive");
  TangentSolver ts{h, {}, {}, {}, {}, 0};
  const double s = -dt;

  if (kind == PredictorKind::pade21) {
    CVector point = pade21(x, t, s, cache, ts);
    return Prediction{std::move(point), ts.solves};
  }

  if (!cache.matches(x, t)) cache.store(x, t, ts.at(x, t));
  const CVector& k1 = cache.tangent;

  CVector point;
  switch (kind) {
    case PredictorKind::euler:
      point = x + s * k1;
      break;
    case PredictorKind::heun: {
      const CVector k2 = ts.at(x + s * k1, t + s);
      point = x + (0.5 * s) * (k1 + k2);
      break;
    }
    case PredictorKind::rk4: {
      const double half = 0.5 * s;
      const CVector k2 = ts.at(x + half * k1, t + half);
      const CVector k3 = ts.at(x + half * k2, t + half);
      const CVector k4 = ts.at(x + s * k3, t + s);
      point = x + (s / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      break;
    }
    case PredictorKind::pade21: break;
  }
  return Prediction{std::move(point), ts.solves};
}

namespace {

CVector reference_point(const PathSystem& h, const CVector& x, double t, double dt) {
  constexpr int kSubsteps = 64;
  CVector y = x;
  double tau = t;
  for (int k = 1; k <= kSubsteps; ++k) {
    const double next = k == kSubsteps ? t - dt : t - dt * k / kSubsteps;
    TangentCache cache;
    y = predict(PredictorKind::rk4, h, y, tau, tau - next, cache).point;
    y = refine(h, y, next, 0.0, 6);
    tau = next;
  }
  return y;
}

}  // namespace

std::optional<double> empirical_order(PredictorKind kind, const PathSystem& h, const CVector& x, double t) {
  constexpr int kSamples = 9;
  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * (1.0 + norm2(x));
  std::vector<double> log_dt;
  std::vector<double> log_err;
  for (int i = 0; i < kSamples; ++i) {
    const double dt = std::pow(10.0, -1.0 - 2.0 * i / (kSamples - 1));
    TangentCache cache;
    const CVector guess = predict(kind, h, x, t, dt, cache).point;
    const double err = norm2(guess - reference_point(h, x, t, dt));
    if (err > floor) {
      log_dt.push_back(std::log(dt));
      log_err.push_back(std::log(err));
    }
  }
  if (log_dt.size() < 3) return std::nullopt;
  const double m = static_cast<double>(log_dt.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_dt.size(); ++i) {
    sx += log_dt[i];
    sy += log_err[i];
    sxx += log_dt[i] * log_dt[i];
    sxy += log_dt[i] * log_err[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace hcont
