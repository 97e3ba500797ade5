#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcont/series.hpp"
#include "hcont/types.hpp"

namespace hcont {

struct Term {
  Complex coefficient;
  std::vector<int> exponents;
};

/// Sparse multivariate polynomial with complex coefficients.
///
/// Terms are kept sorted (graded, then lexicographic on exponents), with
/// duplicate exponent vectors merged and exact-zero coefficients removed.
class Polynomial {
 public:
  explicit Polynomial(std::size_t num_variables = 0);
  Polynomial(std::size_t num_variables, std::vector<Term> terms);

  static Polynomial constant(std::size_t num_variables, Complex value);
  static Polynomial variable(std::size_t num_variables, std::size_t index);

  [[nodiscard]] std::size_t num_variables() const { return num_variables_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  /// Total degree; the zero polynomial has degree 0.
  [[nodiscard]] int degree() const;
  [[nodiscard]] bool is_homogeneous() const;

  [[nodiscard]] Complex evaluate(std::span<const Complex> point) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(Complex scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= Complex(-1.0); }

  [[nodiscard]] Polynomial pow(int exponent) const;

 private:
  void normalize();

  std::size_t num_variables_;
  std::vector<Term> terms_;
};

/// An ordered list of polynomials over a shared list of variable names.
///
/// Immutable after construction. Evaluation routines only read the compiled
/// term tables, so one instance may be shared across threads.
class PolynomialSystem {
 public:
  PolynomialSystem(std::vector<Polynomial> polynomials, std::vector<std::string> variable_names);

  [[nodiscard]] std::size_t size() const { return polynomials_.size(); }
  [[nodiscard]] std::size_t num_variables() const { return variable_names_.size(); }
  [[nodiscard]] bool is_square() const { return size() == num_variables(); }
  [[nodiscard]] const std::vector<Polynomial>& polynomials() const { return polynomials_; }
  [[nodiscard]] const Polynomial& operator[](std::size_t i) const { return polynomials_[i]; }
  [[nodiscard]] const std::vector<std::string>& variable_names() const { return variable_names_; }
  [[nodiscard]] std::vector<int> degrees() const;

  [[nodiscard]] CVector evaluate(const CVector& point) const;
  void evaluate(const CVector& point, CVector& value) const;

  [[nodiscard]] CMatrix jacobian(const CVector& point) const;
  void evaluate_and_jacobian(const CVector& point, CVector& value, CMatrix& jacobian) const;

  /// Evaluates the system along a truncated power series x(s) = sum_k coeffs[k] s^k.
  /// `values[k]` receives the s^k coefficient of F(x(s)) for k < coeffs.size().
  void evaluate_series(std::span<const CVector> coeffs, std::span<CVector> values) const;

 private:
  struct Factor {
    int variable;
    int exponent;
  };
  struct CompiledTerm {
    Complex coefficient;
    std::uint32_t first_factor;
    std::uint32_t factor_count;
  };

  void compile();
  void check_dimension(const CVector& point) const;
  void fill_power_table(const CVector& point, std::vector<Complex>& table) const;

  std::vector<Polynomial> polynomials_;
  std::vector<std::string> variable_names_;

  std::vector<CompiledTerm> terms_;
  std::vector<Factor> factors_;
  std::vector<std::uint32_t> term_offsets_;  // polynomial i owns terms [offsets[i], offsets[i+1])
  std::vector<int> max_exponent_;
  std::vector<std::uint32_t> power_offsets_;
  std::size_t power_table_size_ = 0;
};

struct StartPair {
  PolynomialSystem system;
  std::vector<CVector> solutions;
};

enum class BenchmarkFamily { cyclic, katsura };

/// Adds a leading variable and pads every term with it up to the polynomial's
/// total degree. The new variable is named "x0" unless that name is taken.
[[nodiscard]] PolynomialSystem homogenize(const PolynomialSystem& system);

/// Maps a homogeneous representative (x0, x1, ..., xn) to (x1/x0, ..., xn/x0).
[[nodiscard]] CVector dehomogenize(const CVector& point);

[[nodiscard]] std::uint64_t bezout_number(const PolynomialSystem& system);

/// Start system x_i^{d_i} - 1 with all products of roots of unity as solutions.
[[nodiscard]] StartPair total_degree_start(const PolynomialSystem& target);

[[nodiscard]] PolynomialSystem generate_benchmark(BenchmarkFamily family, int n);
[[nodiscard]] BenchmarkFamily parse_family(std::string_view name);

}  // namespace hcont
