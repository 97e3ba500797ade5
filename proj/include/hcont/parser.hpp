#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hcont/algebra.hpp"

namespace hcont {

/// Syntax or semantic error in system text, with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }
  [[nodiscard]] const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
  int column_;
};

/// Parses a system file:
///
///     # comment
///     vars: x, y
///     x^2 + (0.5-2i)*y - 1
///     x*y - 1
///
/// Operators are + - * ^ with parentheses; exponents are non-negative
/// integer literals; a numeric literal immediately followed by `i` is
/// imaginary. Juxtaposition is not multiplication.
[[nodiscard]] PolynomialSystem parse_system(std::string_view text);

/// Parses a single polynomial expression over the given variables.
[[nodiscard]] Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables);

/// Writes a system in the format accepted by parse_system. Coefficients use
/// 17 significant digits so that reparsing reproduces them exactly.
[[nodiscard]] std::string format_system(const PolynomialSystem& system);
[[nodiscard]] std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& variables);

}  // namespace hcont
