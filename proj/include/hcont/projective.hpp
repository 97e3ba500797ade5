#pragma once

#include <cstdint>
#include <string_view>

#include "hcont/types.hpp"

namespace hcont {

/// `none` tracks in affine coordinates without a chart equation.
enum class PatchKind { none, fixed_random, orthogonal };

[[nodiscard]] std::string_view to_string(PatchKind kind);
[[nodiscard]] PatchKind parse_patch(std::string_view name);

/// Affine chart <x, v> = 1 selecting representatives of projective points.
struct PatchStrategy {
  PatchKind kind = PatchKind::orthogonal;
  CVector vector;
};

/// fixed_random: complex Gaussian v rescaled so <x, v> = 1.
/// orthogonal: x <- x / |x| and v = x.
/// Throws std::invalid_argument for a zero x or PatchKind::none.
[[nodiscard]] PatchStrategy init_patch(PatchKind kind, CVector& x, std::uint64_t seed);

/// Called after an accepted step: rescales x onto the (possibly moved) chart.
void update_patch(PatchStrategy& strategy, CVector& x);

/// Sine of the angle between the lines spanned by x and y.
[[nodiscard]] double projective_distance(const CVector& x, const CVector& y);

}  // namespace hcont
