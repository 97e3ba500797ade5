#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "hcont/predictor.hpp"

using namespace hcont;
using namespace hcont::testing;

namespace {

struct Fixture {
  std::mt19937_64 rng{21};
  PolynomialSystem target = random_system(rng, {2, 3, 2});
  PolynomialSystem start = random_system(rng, {2, 3, 2});
  Complex gamma = random_unit(rng);
  Homotopy h = straight_line(target, start, gamma);
};

}  // namespace

TEST(Homotopy, Endpoints) {
  Fixture f;
  const CVector x = random_vector(f.rng, 3);
  EXPECT_LT((f.h.evaluate(x, 0.0) - f.target.evaluate(x)).norm(), 1e-14 * f.target.evaluate(x).norm());
  EXPECT_LT((f.h.evaluate(x, 1.0) - f.gamma * f.start.evaluate(x)).norm(), 1e-14 * f.start.evaluate(x).norm());
}

TEST(Homotopy, MidpointWithUnitGamma) {
  Fixture f;
  const Homotopy h = straight_line(f.target, f.start, 1.0);
  const CVector x = random_vector(f.rng, 3);
  const CVector mid = 0.5 * (f.start.evaluate(x) + f.target.evaluate(x));
  EXPECT_LT((h.evaluate(x, 0.5) - mid).norm(), 1e-14 * mid.norm());
}

TEST(Homotopy, GammaNormalized) {
  Fixture f;
  const Homotopy h = straight_line(f.target, f.start, Complex(3.0, 4.0));
  EXPECT_NEAR(std::abs(h.gamma()), 1.0, 1e-14);
  EXPECT_THROW((void)straight_line(f.target, f.start, 0.0), std::invalid_argument);
}

TEST(Homotopy, LinearInT) {
  Fixture f;
  const CVector x = random_vector(f.rng, 3);
  for (double t : {0.1, 0.37, 0.9}) {
    const CVector expected = t * f.h.evaluate(x, 1.0) + (1.0 - t) * f.h.evaluate(x, 0.0);
    EXPECT_LT((f.h.evaluate(x, t) - expected).norm(), 1e-14 * std::max(1.0, expected.norm()));
  }
}

TEST(Homotopy, RejectsBadInputs) {
  Fixture f;
  EXPECT_THROW((void)f.h.evaluate(CVector::Ones(3), 1.5), std::invalid_argument);
  EXPECT_THROW((void)f.h.evaluate(CVector::Ones(3), -0.1), std::invalid_argument);
  EXPECT_THROW((void)f.h.evaluate(CVector::Ones(2), 0.5), std::invalid_argument);
  EXPECT_THROW((void)straight_line(f.target, system_of("vars: x\nx - 1\n"), 1.0), std::invalid_argument);
}

TEST(Homotopy, JacobianEndpointsAndFiniteDifferences) {
  Fixture f;
  const CVector x = unit_vector(f.rng, 3);
  EXPECT_LT(rel_err(f.h.jacobian_x(x, 0.0), f.target.jacobian(x)), 1e-15);
  EXPECT_LT(rel_err(f.h.jacobian_x(x, 1.0), f.gamma * f.start.jacobian(x)), 1e-15);
  const double t = 0.42;
  const CMatrix fd = fd_jacobian([&](const CVector& y) { return f.h.evaluate(y, t); }, x, 3);
  EXPECT_LT(rel_err(f.h.jacobian_x(x, t), fd), 1e-6);
}

TEST(Homotopy, DerivativeInT) {
  Fixture f;
  const CVector x = random_vector(f.rng, 3);
  const CVector dt = f.h.derivative_t(x, 0.3);
  EXPECT_LT((dt - (f.gamma * f.start.evaluate(x) - f.target.evaluate(x))).norm(), 1e-14 * dt.norm());
  EXPECT_EQ(dt, f.h.derivative_t(x, 0.8));
  const double step = 1e-6;
  const CVector fd = (f.h.evaluate(x, 0.3 + step) - f.h.evaluate(x, 0.3 - step)) / (2.0 * step);
  EXPECT_LT((fd - dt).norm(), 1e-7 * dt.norm());
  const Homotopy same = straight_line(f.target, f.target, 1.0);
  EXPECT_EQ(same.derivative_t(x, 0.5).norm(), 0.0);
}

TEST(Patched, ChartRow) {
  Fixture f;
  CVector x = unit_vector(f.rng, 3);
  const PatchedHomotopy on(f.h, x / x.squaredNorm());
  EXPECT_EQ(on.equations(), 4u);
  EXPECT_LT(std::abs(on.evaluate(x, 0.5)[3]), 1e-15);

  const CVector y = random_vector(f.rng, 3);
  const CVector v = random_vector(f.rng, 3);
  const PatchedHomotopy off(f.h, v);
  const Complex direct = (y.array() * v.array().conjugate()).sum() - 1.0;
  EXPECT_LT(std::abs(off.evaluate(y, 0.5)[3] - direct), 1e-15 * std::max(1.0, std::abs(direct)));
  EXPECT_EQ(hermitian_dot(y, v), v.dot(y));
}

TEST(Patched, JacobianRowAndTime) {
  Fixture f;
  const CVector v = random_vector(f.rng, 3);
  const CVector x = unit_vector(f.rng, 3);
  const PatchedHomotopy p(f.h, v);
  const CMatrix j = p.jacobian_x(x, 0.6);
  EXPECT_LT((j.row(3).transpose() - v.conjugate()).norm(), 1e-15);
  const CMatrix fd = fd_jacobian([&](const CVector& y) { return p.evaluate(y, 0.6); }, x, 4);
  EXPECT_LT(rel_err(j, fd), 1e-6);
  EXPECT_EQ(p.derivative_t(x, 0.6)[3], Complex(0.0));
  EXPECT_THROW(PatchedHomotopy(f.h, CVector::Ones(2)), std::invalid_argument);
}

TEST(Homotopy, SeriesMatchesTaylorExpansion) {
  Fixture f;
  const CVector x0 = random_vector(f.rng, 3);
  const CVector x1 = random_vector(f.rng, 3);
  std::vector<CVector> coeffs{x0, x1};
  std::vector<CVector> values(2);
  f.h.evaluate_series(coeffs, 0.4, values);
  EXPECT_LT((values[0] - f.h.evaluate(x0, 0.4)).norm(), 1e-13 * values[0].norm());
  const CVector d = f.h.jacobian_x(x0, 0.4) * x1 + f.h.derivative_t(x0, 0.4);
  EXPECT_LT((values[1] - d).norm(), 1e-12 * d.norm());
}

TEST(Homotopy, DavidenkoResidualOfTangent) {
  // A start solution of x^d - 1 is an exact zero at t = 1.
  std::mt19937_64 rng(22);
  const PolynomialSystem target = random_system(rng, {2, 3});
  const StartPair sp = total_degree_start(target);
  const Homotopy h = straight_line(target, sp.system, random_unit(rng));
  for (const CVector& s : sp.solutions) {
    ASSERT_LT(h.evaluate(s, 1.0).norm(), 1e-12);
    const CVector dx = tangent(h, s, 1.0);
    EXPECT_LT((h.jacobian_x(s, 1.0) * dx + h.derivative_t(s, 1.0)).norm(), 1e-8);
  }
}
