#pragma once

// Step size formulas evaluated in 50-digit arithmetic, written from the
// closed forms independently of the library code.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <optional>

namespace hcont::oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

inline Real g(const Real& x) { return sqrt(4 * x + 1) - 1; }

inline Real delta(int n, const Real& omega, const Real& tau) {
  const Real half = omega / 2;
  const Real v = sqrt(half) * pow(tau / (1 + half * tau), Real(1) / (2 * n));
  return v < 1 ? v : Real(1);
}

inline Real max_step(const Real& omega, const Real& eta, int p, int n, const Real& tau, const Real& remaining) {
  const Real v = pow(g(delta(n, omega, tau)) / (omega * eta), Real(1) / p);
  return v < remaining ? v : remaining;
}

inline Real correction(const Real& dt, std::optional<Real> theta0, const Real& omega, int p, int n, const Real& tau) {
  const Real d = delta(n, omega, tau);
  if (theta0 && *theta0 > d) return pow(g(d) / g(*theta0), Real(1) / p) * dt;
  return dt / 2;
}

inline Real prediction(const Real& dt, const Real& omega, const Real& err, int p, int n, const Real& tau,
                       const Real& mu) {
  return mu * pow(g(delta(n, omega, tau)) / (omega * err), Real(1) / p) * dt;
}

inline double rel(double value, const Real& exact) {
  const Real e = abs(Real(value) - exact) / abs(exact);
  return e.convert_to<double>();
}

}  // namespace hcont::oracle
