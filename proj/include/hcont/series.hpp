#pragma once

#include <array>
#include <cassert>
#include <cstddef>

#include "hcont/types.hpp"

namespace hcont {

/// Truncated power series c_0 + c_1 s + ... + c_{L-1} s^{L-1} with L <= 4.
/// Used to push Taylor coefficients of a curve through polynomial maps.
struct Series {
  static constexpr std::size_t kCapacity = 4;

  std::array<Complex, kCapacity> c{};
  std::size_t length = 1;

  Series() = default;
  explicit Series(std::size_t len) : length(len) { assert(len >= 1 && len <= kCapacity); }

  static Series constant(Complex value, std::size_t len) {
    Series s(len);
    s.c[0] = value;
    return s;
  }

  Complex& operator[](std::size_t k) { return c[k]; }
  Complex operator[](std::size_t k) const { return c[k]; }

  Series& operator+=(const Series& o) {
    for (std::size_t k = 0; k < length; ++k) c[k] += o.c[k];
    return *this;
  }
  Series& operator*=(Complex s) {
    for (std::size_t k = 0; k < length; ++k) c[k] *= s;
    return *this;
  }

  friend Series operator*(const Series& a, const Series& b) {
    Series r(a.length);
    for (std::size_t i = 0; i < a.length; ++i) {
      if (a.c[i] == Complex(0.0)) continue;
      for (std::size_t j = 0; i + j < a.length; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }
};

}  // namespace hcont
