#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "hcont/projective.hpp"

using namespace hcont;
using namespace hcont::testing;

TEST(Patch, OrthogonalInit) {
  CVector x(2);
  x << 0.6, 0.8;
  const CVector before = x;
  const PatchStrategy p = init_patch(PatchKind::orthogonal, x, 1);
  EXPECT_EQ(p.kind, PatchKind::orthogonal);
  EXPECT_LT((x - before).norm(), 1e-16);
  EXPECT_EQ(p.vector, x);
  EXPECT_NEAR(std::abs(hermitian_dot(x, p.vector) - 1.0), 0.0, 1e-15);

  CVector y(2);
  y << 3.0, 4.0;
  (void)init_patch(PatchKind::orthogonal, y, 1);
  EXPECT_NEAR(y.norm(), 1.0, 1e-15);
}

TEST(Patch, FixedRandomInit) {
  std::mt19937_64 rng(71);
  CVector x = random_vector(rng, 5);
  const CVector before = x;
  const PatchStrategy p = init_patch(PatchKind::fixed_random, x, 99);
  EXPECT_NEAR(std::abs(hermitian_dot(x, p.vector) - 1.0), 0.0, 1e-14);
  EXPECT_LT(projective_distance(x, before), 1e-15);

  CVector x2 = before;
  const PatchStrategy q = init_patch(PatchKind::fixed_random, x2, 99);
  EXPECT_EQ(q.vector, p.vector);
  CVector x3 = before;
  const PatchStrategy r = init_patch(PatchKind::fixed_random, x3, 100);
  EXPECT_NE(r.vector, p.vector);
}

TEST(Patch, ZeroPointRejected) {
  CVector z = CVector::Zero(3);
  EXPECT_THROW((void)init_patch(PatchKind::orthogonal, z, 1), std::invalid_argument);
  EXPECT_THROW((void)init_patch(PatchKind::fixed_random, z, 1), std::invalid_argument);
  CVector one = CVector::Ones(3);
  EXPECT_THROW((void)init_patch(PatchKind::none, one, 1), std::invalid_argument);
  PatchStrategy p = init_patch(PatchKind::orthogonal, one, 1);
  EXPECT_THROW(update_patch(p, z), std::invalid_argument);
}

TEST(Patch, OrthogonalUpdate) {
  std::mt19937_64 rng(72);
  CVector x = random_vector(rng, 4);
  PatchStrategy p = init_patch(PatchKind::orthogonal, x, 1);
  CVector next = random_vector(rng, 4, 3.0);
  const CVector raw = next;
  update_patch(p, next);
  EXPECT_NEAR(std::abs(hermitian_dot(next, next) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(p.vector, next);
  EXPECT_LT(projective_distance(next, raw), 1e-15);
  const CVector once = next;
  update_patch(p, next);
  EXPECT_LT((next - once).norm(), 1e-15);
}

TEST(Patch, FixedUpdateKeepsVector) {
  std::mt19937_64 rng(73);
  CVector x = random_vector(rng, 4);
  PatchStrategy p = init_patch(PatchKind::fixed_random, x, 5);
  const CVector v = p.vector;
  CVector next = random_vector(rng, 4);
  update_patch(p, next);
  EXPECT_EQ(p.vector, v);
  EXPECT_NEAR(std::abs(hermitian_dot(next, v) - 1.0), 0.0, 1e-14);
  const CVector once = next;
  update_patch(p, next);
  EXPECT_LT((next - once).norm(), 1e-15 * once.norm());
}

TEST(Patch, ProjectiveDistance) {
  std::mt19937_64 rng(74);
  const CVector x = random_vector(rng, 3);
  EXPECT_LT(projective_distance(x, Complex(0.2, -3.0) * x), 1e-15);
  CVector e1 = CVector::Zero(2), e2 = CVector::Zero(2);
  e1[0] = 1.0;
  e2[1] = 1.0;
  EXPECT_NEAR(projective_distance(e1, e2), 1.0, 1e-15);
  EXPECT_EQ(parse_patch("fixed"), PatchKind::fixed_random);
  EXPECT_EQ(to_string(PatchKind::orthogonal), "orthogonal");
  EXPECT_THROW((void)parse_patch("spherical"), std::invalid_argument);
}
