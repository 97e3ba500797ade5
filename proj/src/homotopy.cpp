#include "hcont/homotopy.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hcont {

Complex hermitian_dot(const CVector& x, const CVector& v) {
  // Eigen's dot() conjugates its left operand.
  return v.dot(x);
}

// ---------------------------------------------------------------------------
// PathSystem convenience overloads

void PathSystem::jacobian_x(const CVector& x, double t, CMatrix& jac_x) const {
  CVector value;
  evaluate_and_jacobian(x, t, value, jac_x);
}

CVector PathSystem::evaluate(const CVector& x, double t) const {
  CVector v;
  evaluate(x, t, v);
  return v;
}

CMatrix PathSystem::jacobian_x(const CVector& x, double t) const {
  CMatrix j;
  jacobian_x(x, t, j);
  return j;
}

CVector PathSystem::derivative_t(const CVector& x, double t) const {
  CVector v;
  derivative_t(x, t, v);
  return v;
}

// ---------------------------------------------------------------------------
// Homotopy

Homotopy::Homotopy(PolynomialSystem target, PolynomialSystem start, Complex gamma)
    : target_(std::move(target)), start_(std::move(start)), gamma_(gamma) {
  if (target_.size() != start_.size() || target_.num_variables() != start_.num_variables()) {
    throw std::invalid_argument("start and target systems have different dimensions");
  }
  const double mod = std::abs(gamma_);
  if (!(mod > 0.0) || !std::isfinite(mod)) throw std::invalid_argument("gamma must be a nonzero finite number");
  gamma_ /= mod;
}

Homotopy straight_line(const PolynomialSystem& target, const PolynomialSystem& start, Complex gamma) {
  return Homotopy(target, start, gamma);
}

void Homotopy::check(const CVector& x, double t) const {
  if (static_cast<std::size_t>(x.size()) != variables()) throw std::invalid_argument("dimension mismatch in homotopy");
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("homotopy parameter outside [0, 1]");
}

void Homotopy::evaluate(const CVector& x, double t, CVector& value) const {
  check(x, t);
  thread_local CVector g;
  start_.evaluate(x, g);
  target_.evaluate(x, value);
  value = (t * gamma_) * g + (1.0 - t) * value;
}

void Homotopy::evaluate_and_jacobian(const CVector& x, double t, CVector& value, CMatrix& jac_x) const {
  check(x, t);
  thread_local CVector g;
  thread_local CMatrix jg;
  start_.evaluate_and_jacobian(x, g, jg);
  target_.evaluate_and_jacobian(x, value, jac_x);
  const Complex a = t * gamma_;
  const double b = 1.0 - t;
  value = a * g + b * value;
  jac_x = a * jg + b * jac_x;
}

void Homotopy::derivative_t(const CVector& x, double t, CVector& value) const {
  check(x, t);
  thread_local CVector g;
  start_.evaluate(x, g);
  target_.evaluate(x, value);
  value = gamma_ * g - value;
}

void Homotopy::evaluate_series(std::span<const CVector> x_coeffs, double t, std::span<CVector> values) const {
  if (x_coeffs.empty()) throw std::invalid_argument("empty series");
  check(x_coeffs[0], t);
  const std::size_t len = x_coeffs.size();
  thread_local std::vector<CVector> gs;
  gs.resize(Series::kCapacity);
  start_.evaluate_series(x_coeffs, std::span<CVector>(gs.data(), len));
  target_.evaluate_series(x_coeffs, values);
  // (t + s) * gamma * G(x(s)) + (1 - t - s) * F(x(s)), truncated at s^{len-1}.
  for (std::size_t k = len; k-- > 0;) {
    CVector v = (t * gamma_) * gs[k] + (1.0 - t) * values[k];
    if (k > 0) v += gamma_ * gs[k - 1] - values[k - 1];
    values[k] = std::move(v);
  }
}

// ---------------------------------------------------------------------------
// PatchedHomotopy

PatchedHomotopy::PatchedHomotopy(const PathSystem& base, CVector patch) : base_(&base), patch_(std::move(patch)) {
  if (static_cast<std::size_t>(patch_.size()) != base_->variables()) {
    throw std::invalid_argument("patch vector length does not match the variable count");
  }
}

void PatchedHomotopy::set_patch(const CVector& patch) {
  if (patch.size() != patch_.size()) throw std::invalid_argument("patch vector length mismatch");
  patch_ = patch;
}

void PatchedHomotopy::evaluate(const CVector& x, double t, CVector& value) const {
  thread_local CVector base_value;
  base_->evaluate(x, t, base_value);
  const Eigen::Index m = base_value.size();
  value.resize(m + 1);
  value.head(m) = base_value;
  value[m] = hermitian_dot(x, patch_) - 1.0;
}

void PatchedHomotopy::evaluate_and_jacobian(const CVector& x, double t, CVector& value, CMatrix& jac_x) const {
  thread_local CVector base_value;
  thread_local CMatrix base_jac;
  base_->evaluate_and_jacobian(x, t, base_value, base_jac);
  const Eigen::Index m = base_value.size();
  value.resize(m + 1);
  value.head(m) = base_value;
  value[m] = hermitian_dot(x, patch_) - 1.0;
  jac_x.resize(m + 1, base_jac.cols());
  jac_x.topRows(m) = base_jac;
  jac_x.row(m) = patch_.conjugate().transpose();
}

void PatchedHomotopy::derivative_t(const CVector& x, double t, CVector& value) const {
  thread_local CVector base_value;
  base_->derivative_t(x, t, base_value);
  const Eigen::Index m = base_value.size();
  value.resize(m + 1);
  value.head(m) = base_value;
  value[m] = 0.0;
}

void PatchedHomotopy::evaluate_series(std::span<const CVector> x_coeffs, double t, std::span<CVector> values) const {
  thread_local std::vector<CVector> base_values;
  base_values.resize(Series::kCapacity);
  const std::size_t len = x_coeffs.size();
  base_->evaluate_series(x_coeffs, t, std::span<CVector>(base_values.data(), len));
  for (std::size_t k = 0; k < len; ++k) {
    const Eigen::Index m = base_values[k].size();
    values[k].resize(m + 1);
    values[k].head(m) = base_values[k];
    values[k][m] = hermitian_dot(x_coeffs[k], patch_) - (k == 0 ? 1.0 : 0.0);
  }
}

}  // namespace hcont
