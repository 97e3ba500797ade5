#include "hcont/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hcont {

namespace {

template <class Diagonal>
bool pivots_deficient(const Diagonal& diag) {
  double max_pivot = 0.0;
  double min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double p = std::abs(diag[i]);
    if (!std::isfinite(p)) return true;
    max_pivot = std::max(max_pivot, p);
    min_pivot = std::min(min_pivot, p);
  }
  return diag.size() > 0 && !(min_pivot > kRankTolerance * max_pivot);
}

}  // namespace

void Factorization::compute(const CMatrix& a) {
  rows_ = a.rows();
  cols_ = a.cols();
  if (rows_ < cols_) throw std::invalid_argument("factorize requires rows >= cols");
  if (rows_ == cols_) {
    kind_ = Kind::lu;
    lu_.compute(a);
    rank_deficient_ = pivots_deficient(lu_.matrixLU().diagonal());
  } else {
    kind_ = Kind::qr;
    qr_.compute(a);
    rank_deficient_ = pivots_deficient(qr_.matrixQR().diagonal());
  }
}

void Factorization::solve(const CVector& b, CVector& x) const {
  if (b.size() != rows_) throw std::invalid_argument("right-hand side length does not match the factorization");
  if (rank_deficient_) throw SingularMatrixError("matrix is numerically rank deficient");
  if (kind_ == Kind::lu) {
    x = lu_.solve(b);
  } else {
    x = qr_.solve(b);
  }
}

CVector Factorization::solve(const CVector& b) const {
  CVector x;
  solve(b, x);
  return x;
}

}  // namespace hcont
