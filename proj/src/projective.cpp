#include "hcont/projective.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "hcont/homotopy.hpp"
#include "hcont/linalg.hpp"

namespace hcont {

std::string_view to_string(PatchKind kind) {
  switch (kind) {
    case PatchKind::none: return "none";
    case PatchKind::fixed_random: return "fixed";
    case PatchKind::orthogonal: return "orthogonal";
  }
  return "unknown";
}

PatchKind parse_patch(std::string_view name) {
  if (name == "fixed" || name == "fixed_random") return PatchKind::fixed_random;
  if (name == "orthogonal") return PatchKind::orthogonal;
  if (name == "none" || name == "affine") return PatchKind::none;
  throw std::invalid_argument("unknown patch strategy: " + std::string(name));
}

namespace {

void require_nonzero(const CVector& x) {
  if (x.size() == 0 || !(norm2(x) > 0.0)) throw std::invalid_argument("patch update needs a nonzero point");
}

}  // namespace

PatchStrategy init_patch(PatchKind kind, CVector& x, std::uint64_t seed) {
  require_nonzero(x);
  PatchStrategy s{kind, {}};
  switch (kind) {
    case PatchKind::none: throw std::invalid_argument("no patch to initialize");
    case PatchKind::orthogonal:
      x /= norm2(x);
      s.vector = x;
      break;
    case PatchKind::fixed_random: {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
      CVector v(x.size());
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(normal(rng), normal(rng));
      const Complex c = hermitian_dot(x, v);
      if (c == Complex(0.0)) throw std::invalid_argument("random patch is orthogonal to the start point");
      // <x, a v> = conj(a) <x, v>, so a = 1 / conj(c).
      s.vector = v / std::conj(c);
      break;
    }
  }
  return s;
}

void update_patch(PatchStrategy& strategy, CVector& x) {
  require_nonzero(x);
  switch (strategy.kind) {
    case PatchKind::none: return;
    case PatchKind::orthogonal:
      x /= norm2(x);
      strategy.vector = x;
      return;
    case PatchKind::fixed_random: {
      const Complex c = hermitian_dot(x, strategy.vector);
      if (c == Complex(0.0)) throw std::invalid_argument("point lies on the hyperplane at infinity of the patch");
      x /= c;
      return;
    }
  }
}

double projective_distance(const CVector& x, const CVector& y) {
  const CVector a = x / norm2(x);
  const CVector b = y / norm2(y);
  // Component of b orthogonal to a.
  return norm2(b - hermitian_dot(b, a) * a);
}

}  // namespace hcont
