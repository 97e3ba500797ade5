#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "hcont/algebra.hpp"
#include "hcont/homotopy.hpp"
#include "hcont/parser.hpp"

namespace hcont::testing {

inline CVector random_vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> normal;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * Complex(normal(rng), normal(rng));
  return v;
}

inline CVector unit_vector(std::mt19937_64& rng, Eigen::Index n) {
  CVector v = random_vector(rng, n);
  return v / v.norm();
}

inline Complex random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  return std::polar(1.0, angle(rng));
}

// Dense random polynomial of the given total degree.
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t nvars, int degree) {
  std::normal_distribution<double> normal;
  std::vector<Term> terms;
  std::vector<int> e(nvars, 0);
  // enumerate exponent vectors with |e| <= degree
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == nvars) {
      terms.push_back({Complex(normal(rng), normal(rng)), e});
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, degree);
  return Polynomial(nvars, std::move(terms));
}

inline std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

inline PolynomialSystem random_system(std::mt19937_64& rng, const std::vector<int>& degrees) {
  std::vector<Polynomial> polys;
  for (int d : degrees) polys.push_back(random_polynomial(rng, degrees.size(), d));
  return PolynomialSystem(std::move(polys), names(degrees.size()));
}

inline PolynomialSystem system_of(const std::string& text) { return parse_system(text); }

// Central differences of F along each coordinate.
template <typename Eval>
CMatrix fd_jacobian(Eval f, const CVector& x, Eigen::Index rows, double h = 1e-6) {
  CMatrix j(rows, x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    CVector xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    j.col(k) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return j;
}

inline double rel_err(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

}  // namespace hcont::testing
