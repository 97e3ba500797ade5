#include "hcont/algebra.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace hcont {

namespace {

int term_degree(const Term& term) {
  int d = 0;
  for (int e : term.exponents) d += e;
  return d;
}

// Graded order, larger degree first, ties broken lexicographically descending.
bool term_before(const Term& a, const Term& b) {
  const int da = term_degree(a);
  const int db = term_degree(b);
  if (da != db) return da > db;
  return a.exponents > b.exponents;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::size_t num_variables) : num_variables_(num_variables) {}

Polynomial::Polynomial(std::size_t num_variables, std::vector<Term> terms)
    : num_variables_(num_variables), terms_(std::move(terms)) {
  for (const Term& t : terms_) {
    if (t.exponents.size() != num_variables_) {
      throw std::invalid_argument("term exponent vector length does not match variable count");
    }
    for (int e : t.exponents) {
      if (e < 0) throw std::invalid_argument("negative exponent");
    }
  }
  normalize();
}

Polynomial Polynomial::constant(std::size_t num_variables, Complex value) {
  return Polynomial(num_variables, {Term{value, std::vector<int>(num_variables, 0)}});
}

Polynomial Polynomial::variable(std::size_t num_variables, std::size_t index) {
  if (index >= num_variables) throw std::out_of_range("variable index out of range");
  std::vector<int> e(num_variables, 0);
  e[index] = 1;
  return Polynomial(num_variables, {Term{Complex(1.0), std::move(e)}});
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), term_before);
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (Term& t : terms_) {
    if (!merged.empty() && merged.back().exponents == t.exponents) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coefficient == Complex(0.0); });
  terms_ = std::move(merged);
}

int Polynomial::degree() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, term_degree(t));
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = term_degree(terms_.front());
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const Term& t) { return term_degree(t) == d; });
}

Complex Polynomial::evaluate(std::span<const Complex> point) const {
  if (point.size() != num_variables_) throw std::invalid_argument("dimension mismatch in evaluate");
  Complex sum(0.0);
  for (const Term& t : terms_) {
    Complex m = t.coefficient;
    for (std::size_t j = 0; j < num_variables_; ++j) {
      for (int k = 0; k < t.exponents[j]; ++k) m *= point[j];
    }
    sum += m;
  }
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.num_variables_ != num_variables_) throw std::invalid_argument("variable count mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.num_variables_ != num_variables_) throw std::invalid_argument("variable count mismatch");
  for (const Term& t : other.terms_) terms_.push_back(Term{-t.coefficient, t.exponents});
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(Complex scalar) {
  for (Term& t : terms_) t.coefficient *= scalar;
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.num_variables_ != b.num_variables_) throw std::invalid_argument("variable count mismatch");
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const Term& ta : a.terms_) {
    for (const Term& tb : b.terms_) {
      Term t{ta.coefficient * tb.coefficient, ta.exponents};
      for (std::size_t j = 0; j < t.exponents.size(); ++j) t.exponents[j] += tb.exponents[j];
      out.push_back(std::move(t));
    }
  }
  return Polynomial(a.num_variables_, std::move(out));
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  Polynomial result = constant(num_variables_, Complex(1.0));
  for (int k = 0; k < exponent; ++k) result = result * *this;
  return result;
}

// ---------------------------------------------------------------------------
// PolynomialSystem

PolynomialSystem::PolynomialSystem(std::vector<Polynomial> polynomials,
                                   std::vector<std::string> variable_names)
    : polynomials_(std::move(polynomials)), variable_names_(std::move(variable_names)) {
  if (polynomials_.empty()) throw std::invalid_argument("a polynomial system needs at least one polynomial");
  std::set<std::string> seen;
  for (const std::string& name : variable_names_) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(name).second) throw std::invalid_argument("duplicate variable name: " + name);
  }
  for (const Polynomial& p : polynomials_) {
    if (p.num_variables() != variable_names_.size()) {
      throw std::invalid_argument("polynomial variable count does not match the system");
    }
  }
  compile();
}

void PolynomialSystem::compile() {
  const std::size_t n = num_variables();
  max_exponent_.assign(n, 0);
  term_offsets_.assign(1, 0);
  for (const Polynomial& p : polynomials_) {
    for (const Term& t : p.terms()) {
      CompiledTerm ct{t.coefficient, static_cast<std::uint32_t>(factors_.size()), 0};
      for (std::size_t j = 0; j < n; ++j) {
        if (t.exponents[j] == 0) continue;
        factors_.push_back(Factor{static_cast<int>(j), t.exponents[j]});
        max_exponent_[j] = std::max(max_exponent_[j], t.exponents[j]);
        ++ct.factor_count;
      }
      terms_.push_back(ct);
    }
    term_offsets_.push_back(static_cast<std::uint32_t>(terms_.size()));
  }
  power_offsets_.resize(n);
  std::size_t offset = 0;
  for (std::size_t j = 0; j < n; ++j) {
    power_offsets_[j] = static_cast<std::uint32_t>(offset);
    offset += static_cast<std::size_t>(max_exponent_[j]) + 1;
  }
  power_table_size_ = offset;
}

std::vector<int> PolynomialSystem::degrees() const {
  std::vector<int> d;
  d.reserve(polynomials_.size());
  for (const Polynomial& p : polynomials_) d.push_back(p.degree());
  return d;
}

void PolynomialSystem::check_dimension(const CVector& point) const {
  if (static_cast<std::size_t>(point.size()) != num_variables()) {
    throw std::invalid_argument("dimension mismatch: point has " + std::to_string(point.size()) +
                                " entries, system has " + std::to_string(num_variables()) + " variables");
  }
}

void PolynomialSystem::fill_power_table(const CVector& point, std::vector<Complex>& table) const {
  table.resize(power_table_size_);
  for (std::size_t j = 0; j < num_variables(); ++j) {
    Complex* row = table.data() + power_offsets_[j];
    row[0] = Complex(1.0);
    for (int e = 1; e <= max_exponent_[j]; ++e) row[e] = row[e - 1] * point[static_cast<Eigen::Index>(j)];
  }
}

CVector PolynomialSystem::evaluate(const CVector& point) const {
  CVector value;
  evaluate(point, value);
  return value;
}

void PolynomialSystem::evaluate(const CVector& point, CVector& value) const {
  check_dimension(point);
  thread_local std::vector<Complex> powers;
  fill_power_table(point, powers);
  value.resize(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    Complex sum(0.0);
    for (std::uint32_t k = term_offsets_[i]; k < term_offsets_[i + 1]; ++k) {
      const CompiledTerm& t = terms_[k];
      Complex m = t.coefficient;
      for (std::uint32_t f = 0; f < t.factor_count; ++f) {
        const Factor& fac = factors_[t.first_factor + f];
        m *= powers[power_offsets_[fac.variable] + fac.exponent];
      }
      sum += m;
    }
    value[static_cast<Eigen::Index>(i)] = sum;
  }
}

CMatrix PolynomialSystem::jacobian(const CVector& point) const {
  CVector value;
  CMatrix jac;
  evaluate_and_jacobian(point, value, jac);
  return jac;
}

void PolynomialSystem::evaluate_and_jacobian(const CVector& point, CVector& value, CMatrix& jac) const {
  check_dimension(point);
  thread_local std::vector<Complex> powers;
  thread_local std::vector<Complex> factor_values;
  fill_power_table(point, powers);
  value.resize(static_cast<Eigen::Index>(size()));
  jac.setZero(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(num_variables()));
  for (std::size_t i = 0; i < size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    Complex sum(0.0);
    for (std::uint32_t k = term_offsets_[i]; k < term_offsets_[i + 1]; ++k) {
      const CompiledTerm& t = terms_[k];
      factor_values.resize(t.factor_count);
      Complex m = t.coefficient;
      for (std::uint32_t f = 0; f < t.factor_count; ++f) {
        const Factor& fac = factors_[t.first_factor + f];
        factor_values[f] = powers[power_offsets_[fac.variable] + fac.exponent];
        m *= factor_values[f];
      }
      sum += m;
      // d/dx_v of c * prod_f x_{v_f}^{e_f}, without dividing by x_v.
      for (std::uint32_t f = 0; f < t.factor_count; ++f) {
        const Factor& fac = factors_[t.first_factor + f];
        Complex d = t.coefficient * static_cast<double>(fac.exponent) *
                    powers[power_offsets_[fac.variable] + fac.exponent - 1];
        for (std::uint32_t g = 0; g < t.factor_count; ++g) {
          if (g != f) d *= factor_values[g];
        }
        jac(row, fac.variable) += d;
      }
    }
    value[row] = sum;
  }
}

void PolynomialSystem::evaluate_series(std::span<const CVector> coeffs, std::span<CVector> values) const {
  const std::size_t len = coeffs.size();
  if (len == 0 || len > Series::kCapacity) throw std::invalid_argument("series length out of range");
  if (values.size() < len) throw std::invalid_argument("series output too short");
  for (const CVector& c : coeffs) check_dimension(c);

  thread_local std::vector<Series> powers;
  powers.assign(power_table_size_, Series(len));
  for (std::size_t j = 0; j < num_variables(); ++j) {
    Series xj(len);
    for (std::size_t k = 0; k < len; ++k) xj[k] = coeffs[k][static_cast<Eigen::Index>(j)];
    Series* row = powers.data() + power_offsets_[j];
    row[0] = Series::constant(Complex(1.0), len);
    for (int e = 1; e <= max_exponent_[j]; ++e) row[e] = row[e - 1] * xj;
  }
  for (std::size_t k = 0; k < len; ++k) values[k].setZero(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    Series sum(len);
    for (std::uint32_t k = term_offsets_[i]; k < term_offsets_[i + 1]; ++k) {
      const CompiledTerm& t = terms_[k];
      Series m = Series::constant(t.coefficient, len);
      for (std::uint32_t f = 0; f < t.factor_count; ++f) {
        const Factor& fac = factors_[t.first_factor + f];
        m = m * powers[power_offsets_[fac.variable] + fac.exponent];
      }
      sum += m;
    }
    for (std::size_t k = 0; k < len; ++k) values[k][static_cast<Eigen::Index>(i)] = sum[k];
  }
}

// ---------------------------------------------------------------------------
// Constructions

PolynomialSystem homogenize(const PolynomialSystem& system) {
  std::string name = "x0";
  const auto& names = system.variable_names();
  for (int suffix = 0; std::find(names.begin(), names.end(), name) != names.end(); ++suffix) {
    name = "h" + std::to_string(suffix);
  }
  std::vector<std::string> new_names;
  new_names.reserve(names.size() + 1);
  new_names.push_back(name);
  new_names.insert(new_names.end(), names.begin(), names.end());

  std::vector<Polynomial> out;
  out.reserve(system.size());
  for (const Polynomial& p : system.polynomials()) {
    const int d = p.degree();
    std::vector<Term> terms;
    terms.reserve(p.terms().size());
    for (const Term& t : p.terms()) {
      Term h{t.coefficient, {}};
      h.exponents.reserve(t.exponents.size() + 1);
      h.exponents.push_back(d - term_degree(t));
      h.exponents.insert(h.exponents.end(), t.exponents.begin(), t.exponents.end());
      terms.push_back(std::move(h));
    }
    out.emplace_back(names.size() + 1, std::move(terms));
  }
  return PolynomialSystem(std::move(out), std::move(new_names));
}

CVector dehomogenize(const CVector& point) {
  if (point.size() < 1) throw std::invalid_argument("cannot dehomogenize an empty vector");
  return point.tail(point.size() - 1) / point[0];
}

std::uint64_t bezout_number(const PolynomialSystem& system) {
  if (!system.is_square()) throw std::invalid_argument("Bezout number requires a square system");
  std::uint64_t product = 1;
  for (int d : system.degrees()) {
    const auto du = static_cast<std::uint64_t>(d);
    if (du != 0 && product > std::numeric_limits<std::uint64_t>::max() / du) {
      throw std::overflow_error("Bezout number overflows 64 bits");
    }
    product *= du;
  }
  return product;
}

StartPair total_degree_start(const PolynomialSystem& target) {
  if (!target.is_square()) throw std::invalid_argument("total degree start system requires a square target");
  const std::vector<int> degrees = target.degrees();
  const std::size_t n = target.num_variables();
  for (int d : degrees) {
    if (d == 0) throw std::invalid_argument("target contains a constant polynomial; no total degree start system");
  }

  std::vector<Polynomial> polys;
  polys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = degrees[i];
    polys.emplace_back(n, std::vector<Term>{Term{Complex(1.0), e},
                                            Term{Complex(-1.0), std::vector<int>(n, 0)}});
  }

  std::vector<std::vector<Complex>> roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < degrees[i]; ++k) {
      roots[i].push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / degrees[i]));
    }
  }

  const std::uint64_t count = bezout_number(target);
  std::vector<CVector> solutions;
  solutions.reserve(count);
  std::vector<int> digit(n, 0);
  for (std::uint64_t s = 0; s < count; ++s) {
    CVector x(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) x[static_cast<Eigen::Index>(i)] = roots[i][digit[i]];
    solutions.push_back(std::move(x));
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < degrees[i]) break;
      digit[i] = 0;
    }
  }
  return StartPair{PolynomialSystem(std::move(polys), target.variable_names()), std::move(solutions)};
}

namespace {

PolynomialSystem cyclic(int n) {
  const auto nv = static_cast<std::size_t>(n);
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<Polynomial> polys;
  for (int k = 1; k < n; ++k) {
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
      std::vector<int> e(nv, 0);
      for (int j = 0; j < k; ++j) e[static_cast<std::size_t>((i + j) % n)] += 1;
      terms.push_back(Term{Complex(1.0), std::move(e)});
    }
    polys.emplace_back(nv, std::move(terms));
  }
  polys.emplace_back(nv, std::vector<Term>{Term{Complex(1.0), std::vector<int>(nv, 1)},
                                           Term{Complex(-1.0), std::vector<int>(nv, 0)}});
  return PolynomialSystem(std::move(polys), std::move(names));
}

PolynomialSystem katsura(int n) {
  const auto nv = static_cast<std::size_t>(n) + 1;
  std::vector<std::string> names;
  for (int i = 0; i <= n; ++i) names.push_back("u" + std::to_string(i));
  auto u = [&](int k) {
    k = std::abs(k);
    return k > n ? Polynomial(nv) : Polynomial::variable(nv, static_cast<std::size_t>(k));
  };

  std::vector<Polynomial> polys;
  Polynomial linear = Polynomial::constant(nv, Complex(-1.0));
  for (int l = -n; l <= n; ++l) linear += u(l);
  polys.push_back(std::move(linear));
  for (int m = 0; m < n; ++m) {
    Polynomial q = -u(m);
    for (int l = -n; l <= n; ++l) q += u(l) * u(m - l);
    polys.push_back(std::move(q));
  }
  return PolynomialSystem(std::move(polys), std::move(names));
}

}  // namespace

PolynomialSystem generate_benchmark(BenchmarkFamily family, int n) {
  if (n < 2) throw std::invalid_argument("benchmark family size must be at least 2");
  switch (family) {
    case BenchmarkFamily::cyclic: return cyclic(n);
    case BenchmarkFamily::katsura: return katsura(n);
  }
  throw std::invalid_argument("unsupported benchmark family");
}

BenchmarkFamily parse_family(std::string_view name) {
  if (name == "cyclic") return BenchmarkFamily::cyclic;
  if (name == "katsura") return BenchmarkFamily::katsura;
  throw std::invalid_argument("unsupported benchmark family: " + std::string(name));
}

}  // namespace hcont
