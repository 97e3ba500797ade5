#pragma once

#include <Eigen/LU>
#include <Eigen/QR>

#include "hcont/types.hpp"

namespace hcont {

/// Relative pivot threshold below which a factorization is flagged rank deficient.
inline constexpr double kRankTolerance = 1e-14;

/// Reusable factorization of an m x n matrix with m >= n.
///
/// Square matrices use LU with partial pivoting, tall ones QR with column
/// pivoting; `solve` then realizes the Moore-Penrose pseudo-inverse action
/// for full column rank.
class Factorization {
 public:
  enum class Kind { lu, qr };

  Factorization() = default;
  explicit Factorization(const CMatrix& a) { compute(a); }

  void compute(const CMatrix& a);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] Eigen::Index rows() const { return rows_; }
  [[nodiscard]] Eigen::Index cols() const { return cols_; }
  [[nodiscard]] bool rank_deficient() const { return rank_deficient_; }

  /// Throws SingularMatrixError on a rank deficient factorization.
  void solve(const CVector& b, CVector& x) const;
  [[nodiscard]] CVector solve(const CVector& b) const;

 private:
  Kind kind_ = Kind::lu;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  bool rank_deficient_ = true;
  Eigen::PartialPivLU<CMatrix> lu_;
  Eigen::ColPivHouseholderQR<CMatrix> qr_;
};

[[nodiscard]] inline Factorization factorize(const CMatrix& a) { return Factorization(a); }

[[nodiscard]] inline double norm2(const CVector& v) { return v.norm(); }

}  // namespace hcont
