#pragma once

#include <span>

#include "hcont/algebra.hpp"
#include "hcont/types.hpp"

namespace hcont {

/// A parametrized system H(x, t): C^n x [0,1] -> C^m.
///
/// Implementations must be safe to call concurrently from several threads.
class PathSystem {
 public:
  virtual ~PathSystem() = default;

  [[nodiscard]] virtual std::size_t equations() const = 0;
  [[nodiscard]] virtual std::size_t variables() const = 0;

  virtual void evaluate(const CVector& x, double t, CVector& value) const = 0;
  virtual void evaluate_and_jacobian(const CVector& x, double t, CVector& value, CMatrix& jac_x) const = 0;
  virtual void jacobian_x(const CVector& x, double t, CMatrix& jac_x) const;
  virtual void derivative_t(const CVector& x, double t, CVector& value) const = 0;

  /// Taylor coefficients in s of H(x(s), t + s), where x(s) = sum_k x_coeffs[k] s^k.
  virtual void evaluate_series(std::span<const CVector> x_coeffs, double t, std::span<CVector> values) const = 0;

  [[nodiscard]] CVector evaluate(const CVector& x, double t) const;
  [[nodiscard]] CMatrix jacobian_x(const CVector& x, double t) const;
  [[nodiscard]] CVector derivative_t(const CVector& x, double t) const;
};

/// Straight-line homotopy H(x,t) = t * gamma * G(x) + (1 - t) * F(x).
///
/// The start system G sits at t = 1 and the target F at t = 0; paths are
/// tracked with decreasing t.
class Homotopy final : public PathSystem {
 public:
  Homotopy(PolynomialSystem target, PolynomialSystem start, Complex gamma);

  [[nodiscard]] const PolynomialSystem& target() const { return target_; }
  [[nodiscard]] const PolynomialSystem& start() const { return start_; }
  [[nodiscard]] Complex gamma() const { return gamma_; }

  [[nodiscard]] std::size_t equations() const override { return target_.size(); }
  [[nodiscard]] std::size_t variables() const override { return target_.num_variables(); }

  using PathSystem::derivative_t;
  using PathSystem::evaluate;
  using PathSystem::jacobian_x;

  void evaluate(const CVector& x, double t, CVector& value) const override;
  void evaluate_and_jacobian(const CVector& x, double t, CVector& value, CMatrix& jac_x) const override;
  void derivative_t(const CVector& x, double t, CVector& value) const override;
  void evaluate_series(std::span<const CVector> x_coeffs, double t, std::span<CVector> values) const override;

 private:
  void check(const CVector& x, double t) const;

  PolynomialSystem target_;
  PolynomialSystem start_;
  Complex gamma_;
};

/// Builds the straight-line homotopy; `gamma` is normalized to unit modulus.
[[nodiscard]] Homotopy straight_line(const PolynomialSystem& target, const PolynomialSystem& start, Complex gamma);

/// Appends the affine chart equation <x, v> - 1 = sum_i x_i conj(v_i) - 1 to a
/// base system. The base is borrowed and must outlive this object; the patch
/// vector is owned and mutable, so an instance belongs to a single path.
class PatchedHomotopy final : public PathSystem {
 public:
  PatchedHomotopy(const PathSystem& base, CVector patch);

  [[nodiscard]] const PathSystem& base() const { return *base_; }
  [[nodiscard]] const CVector& patch() const { return patch_; }
  void set_patch(const CVector& patch);

  [[nodiscard]] std::size_t equations() const override { return base_->equations() + 1; }
  [[nodiscard]] std::size_t variables() const override { return base_->variables(); }

  using PathSystem::derivative_t;
  using PathSystem::evaluate;
  using PathSystem::jacobian_x;

  void evaluate(const CVector& x, double t, CVector& value) const override;
  void evaluate_and_jacobian(const CVector& x, double t, CVector& value, CMatrix& jac_x) const override;
  void derivative_t(const CVector& x, double t, CVector& value) const override;
  void evaluate_series(std::span<const CVector> x_coeffs, double t, std::span<CVector> values) const override;

 private:
  const PathSystem* base_;
  CVector patch_;
};

/// <x, v> = sum_i x_i conj(v_i), conjugate-linear in the second argument.
[[nodiscard]] Complex hermitian_dot(const CVector& x, const CVector& v);

}  // namespace hcont
