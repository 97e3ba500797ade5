#include "hcont/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

namespace hcont {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

enum class Tok { number, ident, plus, minus, star, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string_view text;
  Complex value;  // for numbers
  int column;     // 1-based within the line
};

constexpr int kMaxExponent = 1000;

/// Recursive-descent parser over one line of input.
class LineParser {
 public:
  LineParser(std::string_view line, int line_number, int column_offset,
             const std::map<std::string, std::size_t, std::less<>>& vars)
      : line_(line), line_number_(line_number), column_offset_(column_offset), vars_(vars) {
    advance();
  }

  Polynomial parse() {
    Polynomial p = expression();
    if (tok_.kind != Tok::end) unexpected();
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, int column) const {
    throw ParseError(msg, line_number_, column + column_offset_);
  }

  [[noreturn]] void unexpected() const {
    if (tok_.kind == Tok::end) fail("unexpected end of expression", tok_.column);
    fail("syntax error near '" + std::string(tok_.text) + "'", tok_.column);
  }

  void advance() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    const int column = static_cast<int>(pos_) + 1;
    if (pos_ >= line_.size()) {
      tok_ = Token{Tok::end, {}, {}, column};
      return;
    }
    const char c = line_[pos_];
    auto single = [&](Tok k) {
      tok_ = Token{k, line_.substr(pos_, 1), {}, column};
      ++pos_;
    };
    switch (c) {
      case '+': return single(Tok::plus);
      case '-': return single(Tok::minus);
      case '*': return single(Tok::star);
      case '^': return single(Tok::caret);
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(column);
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < line_.size() && is_ident_char(line_[pos_])) ++pos_;
      tok_ = Token{Tok::ident, line_.substr(start, pos_ - start), {}, column};
      return;
    }
    fail(std::string("unexpected character '") + c + "'", column);
  }

  void lex_number(int column) {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t count = digits();
    if (pos_ < line_.size() && line_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail("malformed numeric literal", column);
    if (pos_ < line_.size() && (line_[pos_] == 'e' || line_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < line_.size() && (line_[pos_] == '+' || line_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // not an exponent; left for the juxtaposition check
    }
    const std::string_view text = line_.substr(start, pos_ - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) fail("malformed numeric literal", column);

    Complex value(v, 0.0);
    if (pos_ < line_.size() && is_ident_char(line_[pos_])) {
      const std::size_t suffix_start = pos_;
      while (pos_ < line_.size() && is_ident_char(line_[pos_])) ++pos_;
      const std::string_view suffix = line_.substr(suffix_start, pos_ - suffix_start);
      if (suffix == "i") {
        value = Complex(0.0, v);
      } else if (suffix.front() == 'i' || suffix.front() == 'j' || suffix.front() == 'I' ||
                 suffix.front() == 'J') {
        fail("malformed complex literal '" + std::string(line_.substr(start, pos_ - start)) + "'", column);
      } else {
        fail("juxtaposition is not allowed; use '*' between factors", static_cast<int>(suffix_start) + 1);
      }
    }
    tok_ = Token{Tok::number, line_.substr(start, pos_ - start), value, column};
  }

  Polynomial expression() {
    Polynomial acc(vars_.size());
    bool negate = false;
    if (tok_.kind == Tok::plus || tok_.kind == Tok::minus) {
      negate = tok_.kind == Tok::minus;
      advance();
    }
    Polynomial first = term();
    acc = negate ? -first : first;
    while (tok_.kind == Tok::plus || tok_.kind == Tok::minus) {
      const bool minus = tok_.kind == Tok::minus;
      advance();
      Polynomial t = term();
      if (minus) acc -= t;
      else acc += t;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (tok_.kind == Tok::star) {
      advance();
      acc = acc * factor();
    }
    if (tok_.kind == Tok::number || tok_.kind == Tok::ident || tok_.kind == Tok::lparen) {
      fail("juxtaposition is not allowed; use '*' between factors", tok_.column);
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (tok_.kind != Tok::caret) return base;
    advance();
    if (tok_.kind != Tok::number) unexpected();
    int e = 0;
    const auto [ptr, ec] = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), e);
    if (ec != std::errc() || ptr != tok_.text.data() + tok_.text.size()) {
      fail("exponent must be a non-negative integer", tok_.column);
    }
    if (e > kMaxExponent) fail("exponent too large", tok_.column);
    advance();
    return base.pow(e);
  }

  Polynomial primary() {
    switch (tok_.kind) {
      case Tok::number: {
        Polynomial p = Polynomial::constant(vars_.size(), tok_.value);
        advance();
        return p;
      }
      case Tok::ident: {
        const auto it = vars_.find(tok_.text);
        if (it == vars_.end()) fail("unknown variable '" + std::string(tok_.text) + "'", tok_.column);
        advance();
        return Polynomial::variable(vars_.size(), it->second);
      }
      case Tok::lparen: {
        const int open_column = tok_.column;
        advance();
        Polynomial inner = expression();
        if (tok_.kind != Tok::rparen) {
          if (tok_.kind == Tok::end) fail("unbalanced parenthesis", open_column);
          unexpected();
        }
        advance();
        return inner;
      }
      default: unexpected();
    }
  }

  std::string_view line_;
  int line_number_;
  int column_offset_;
  const std::map<std::string, std::size_t, std::less<>>& vars_;
  std::size_t pos_ = 0;
  Token tok_{};
};

std::map<std::string, std::size_t, std::less<>> index_variables(const std::vector<std::string>& variables) {
  std::map<std::string, std::size_t, std::less<>> m;
  for (std::size_t i = 0; i < variables.size(); ++i) m.emplace(variables[i], i);
  return m;
}

std::string_view trim(std::string_view s, std::size_t& leading) {
  leading = 0;
  while (leading < s.size() && std::isspace(static_cast<unsigned char>(s[leading]))) ++leading;
  std::size_t end = s.size();
  while (end > leading && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(leading, end - leading);
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
  const auto vars = index_variables(variables);
  return LineParser(text, 1, 0, vars).parse();
}

PolynomialSystem parse_system(std::string_view text) {
  std::vector<std::string> names;
  std::map<std::string, std::size_t, std::less<>> vars;
  std::vector<Polynomial> polys;
  bool have_vars = false;

  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_number;

    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t leading = 0;
    const std::string_view line = trim(raw, leading);
    if (line.empty()) continue;

    if (!have_vars) {
      if (line.substr(0, 5) != "vars:") {
        throw ParseError("expected a 'vars:' declaration before any polynomial", line_number,
                         static_cast<int>(leading) + 1);
      }
      std::size_t p = 5;
      while (p <= line.size()) {
        std::size_t comma = line.find(',', p);
        if (comma == std::string_view::npos) comma = line.size();
        std::size_t lead = 0;
        const std::string_view name = trim(line.substr(p, comma - p), lead);
        const int column = static_cast<int>(leading + p + lead) + 1;
        if (name.empty() || !is_ident_start(name.front()) ||
            !std::all_of(name.begin(), name.end(), is_ident_char)) {
          throw ParseError("invalid variable name '" + std::string(name) + "'", line_number, column);
        }
        if (!vars.emplace(std::string(name), names.size()).second) {
          throw ParseError("duplicate variable '" + std::string(name) + "'", line_number, column);
        }
        names.emplace_back(name);
        p = comma + 1;
      }
      have_vars = true;
      continue;
    }
    polys.push_back(LineParser(line, line_number, static_cast<int>(leading), vars).parse());
  }
  if (!have_vars) throw ParseError("missing 'vars:' declaration", line_number, 1);
  if (polys.empty()) throw ParseError("system contains no polynomials", line_number, 1);
  return PolynomialSystem(std::move(polys), std::move(names));
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& variables) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : p.terms()) {
    std::string monomial;
    for (std::size_t j = 0; j < t.exponents.size(); ++j) {
      if (t.exponents[j] == 0) continue;
      if (!monomial.empty()) monomial += '*';
      monomial += variables[j];
      if (t.exponents[j] > 1) monomial += '^' + std::to_string(t.exponents[j]);
    }
    const Complex c = t.coefficient;
    std::string coeff;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = std::signbit(c.real());
      const double mag = std::abs(c.real());
      if (!(mag == 1.0 && !monomial.empty())) coeff = format_real(mag);
    } else {
      coeff = "(" + format_real(c.real()) + (std::signbit(c.imag()) ? "-" : "+") +
              format_real(std::abs(c.imag())) + "i)";
    }
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    out += coeff;
    if (!coeff.empty() && !monomial.empty()) out += '*';
    out += monomial;
  }
  return out;
}

std::string format_system(const PolynomialSystem& system) {
  std::string out = "vars: ";
  const auto& names = system.variable_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  out += '\n';
  for (const Polynomial& p : system.polynomials()) out += format_polynomial(p, names) + '\n';
  return out;
}

}  // namespace hcont
