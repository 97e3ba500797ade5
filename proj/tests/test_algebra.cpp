#include <gtest/gtest.h>

#include <random>
#include <set>

#include "helpers.hpp"

using namespace hcont;
using namespace hcont::testing;

TEST(Evaluate, QuadraticAtRootAndTwo) {
  const PolynomialSystem s = system_of("vars: x\nx^2 - 1\n");
  EXPECT_EQ(s.evaluate(CVector::Constant(1, 1.0))[0], Complex(0.0));
  EXPECT_EQ(s.evaluate(CVector::Constant(1, 2.0))[0], Complex(3.0));
}

TEST(Evaluate, CyclicThreeAtOnes) {
  const PolynomialSystem s = generate_benchmark(BenchmarkFamily::cyclic, 3);
  const CVector v = s.evaluate(CVector::Ones(3));
  EXPECT_EQ(v[0], Complex(3.0));
  EXPECT_EQ(v[1], Complex(3.0));
  EXPECT_EQ(v[2], Complex(0.0));
}

TEST(Evaluate, DimensionMismatch) {
  const PolynomialSystem s = system_of("vars: x, y\nx*y\n");
  EXPECT_THROW((void)s.evaluate(CVector::Ones(3)), std::invalid_argument);
  EXPECT_THROW((void)s.jacobian(CVector::Ones(1)), std::invalid_argument);
}

TEST(Jacobian, Examples) {
  EXPECT_EQ(system_of("vars: x\nx^2 - 1\n").jacobian(CVector::Constant(1, 2.0))(0, 0), Complex(4.0));
  CVector p(2);
  p << 1.0, 2.0;
  const CMatrix j = system_of("vars: x, y\nx*y\nx + y\n").jacobian(p);
  CMatrix expected(2, 2);
  expected << 2.0, 1.0, 1.0, 1.0;
  EXPECT_EQ(j, expected);
}

TEST(Jacobian, MatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const PolynomialSystem s = random_system(rng, {3, 3});
    const CVector x = unit_vector(rng, 2);
    const CMatrix fd = fd_jacobian([&](const CVector& y) { return s.evaluate(y); }, x, 2);
    EXPECT_LT(rel_err(s.jacobian(x), fd), 1e-6);
  }
}

TEST(Jacobian, TaylorRemainderIsQuadratic) {
  std::mt19937_64 rng(12);
  const PolynomialSystem s = random_system(rng, {2, 3, 4});
  const CVector x = unit_vector(rng, 3);
  const CVector v = unit_vector(rng, 3);
  const CVector f = s.evaluate(x);
  const CMatrix j = s.jacobian(x);
  std::vector<double> r;
  for (double h : {1e-2, 1e-3, 1e-4}) r.push_back((s.evaluate(x + h * v) - f - h * (j * v)).norm());
  // each decade of h cuts the remainder by about 100
  EXPECT_NEAR(std::log10(r[0] / r[1]), 2.0, 0.1);
  EXPECT_NEAR(std::log10(r[1] / r[2]), 2.0, 0.1);
}

TEST(Jacobian, CombinedMatchesSeparate) {
  std::mt19937_64 rng(13);
  const PolynomialSystem s = generate_benchmark(BenchmarkFamily::katsura, 4);
  const CVector x = random_vector(rng, 5);
  CVector value;
  CMatrix jac;
  s.evaluate_and_jacobian(x, value, jac);
  EXPECT_EQ(value, s.evaluate(x));
  EXPECT_EQ(jac, s.jacobian(x));
}

TEST(Homogenize, PadsDegrees) {
  const PolynomialSystem h = homogenize(system_of("vars: x\nx^2 - 1\n"));
  EXPECT_EQ(h.variable_names(), (std::vector<std::string>{"x0", "x"}));
  const PolynomialSystem expected = system_of("vars: x0, x\nx^2 - x0^2\n");
  EXPECT_EQ(format_system(h), format_system(expected));

  const PolynomialSystem h2 = homogenize(system_of("vars: x, y\nx*y + x + 1\n"));
  const PolynomialSystem e2 = system_of("vars: x0, x, y\nx*y + x*x0 + x0^2\n");
  EXPECT_EQ(format_system(h2), format_system(e2));
}

TEST(Homogenize, AvoidsTakenName) {
  const PolynomialSystem h = homogenize(system_of("vars: x0, x1\nx0 + 1\nx1 - 2\n"));
  EXPECT_EQ(h.num_variables(), 3u);
  EXPECT_NE(h.variable_names()[0], "x0");
}

TEST(Homogenize, KatsuraScalesHomogeneously) {
  std::mt19937_64 rng(14);
  const PolynomialSystem h = homogenize(generate_benchmark(BenchmarkFamily::katsura, 6));
  const CVector x = random_vector(rng, static_cast<Eigen::Index>(h.num_variables()));
  const CVector f1 = h.evaluate(x);
  const CVector f2 = h.evaluate(2.0 * x);
  const auto d = h.degrees();
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_TRUE(h[i].is_homogeneous());
    EXPECT_LT(std::abs(f2[i] - std::pow(2.0, d[i]) * f1[i]), 1e-10 * std::abs(f2[i]));
  }
}

TEST(Homogenize, EulerRelation) {
  std::mt19937_64 rng(15);
  const PolynomialSystem h = homogenize(random_system(rng, {2, 3, 4}));
  for (int trial = 0; trial < 10; ++trial) {
    const CVector x = random_vector(rng, 4);
    const CVector lhs = h.jacobian(x) * x;
    const CVector f = h.evaluate(x);
    const auto d = h.degrees();
    for (std::size_t i = 0; i < h.size(); ++i) {
      EXPECT_LT(std::abs(lhs[i] - double(d[i]) * f[i]), 1e-10 * std::abs(lhs[i]));
    }
  }
}

TEST(Homogenize, DehomogenizeRecoversInput) {
  std::mt19937_64 rng(16);
  const PolynomialSystem s = random_system(rng, {2, 3});
  const PolynomialSystem h = homogenize(s);
  const CVector x = random_vector(rng, 2);
  CVector y(3);
  y << 1.0, x[0], x[1];
  EXPECT_LT((h.evaluate(y) - s.evaluate(x)).norm(), 1e-12 * s.evaluate(x).norm());
  const Complex lambda(0.3, -1.7);
  EXPECT_LT((dehomogenize(lambda * y) - x).norm(), 1e-14 * x.norm());
}

TEST(Bezout, Examples) {
  EXPECT_EQ(bezout_number(system_of("vars: x\nx^3 - 1\n")), 3u);
  EXPECT_EQ(bezout_number(generate_benchmark(BenchmarkFamily::cyclic, 7)), 5040u);
  EXPECT_EQ(bezout_number(generate_benchmark(BenchmarkFamily::katsura, 11)), 2048u);
  EXPECT_THROW((void)bezout_number(system_of("vars: x, y\nx + y\n")), std::invalid_argument);
}

TEST(StartSystem, Quadratic) {
  const StartPair sp = total_degree_start(system_of("vars: x\nx^2 - 3*x\n"));
  ASSERT_EQ(sp.solutions.size(), 2u);
  std::set<double> reals;
  for (const auto& s : sp.solutions) {
    EXPECT_NEAR(s[0].imag(), 0.0, 1e-15);
    reals.insert(std::round(s[0].real()));
  }
  EXPECT_EQ(reals, (std::set<double>{-1.0, 1.0}));
  EXPECT_EQ(sp.system.evaluate(CVector::Constant(1, 2.0))[0], Complex(3.0));
}

TEST(StartSystem, CountsAndResiduals) {
  std::mt19937_64 rng(17);
  EXPECT_EQ(total_degree_start(random_system(rng, {2, 3})).solutions.size(), 6u);
  const PolynomialSystem c7 = generate_benchmark(BenchmarkFamily::cyclic, 7);
  const StartPair sp = total_degree_start(c7);
  ASSERT_EQ(sp.solutions.size(), 5040u);
  for (const auto& s : sp.solutions) ASSERT_LT(sp.system.evaluate(s).norm(), 1e-12);
}

TEST(StartSystem, RejectsConstantAndNonSquare) {
  EXPECT_THROW((void)total_degree_start(system_of("vars: x, y\nx + y\n3\n")), std::invalid_argument);
  EXPECT_THROW((void)total_degree_start(system_of("vars: x, y\nx + y\n")), std::invalid_argument);
}

TEST(Generate, CyclicThree) {
  const PolynomialSystem s = generate_benchmark(BenchmarkFamily::cyclic, 3);
  const PolynomialSystem expected =
      system_of("vars: x1, x2, x3\nx1 + x2 + x3\nx1*x2 + x2*x3 + x3*x1\nx1*x2*x3 - 1\n");
  EXPECT_EQ(format_system(s), format_system(expected));
}

TEST(Generate, KatsuraShape) {
  const PolynomialSystem s = generate_benchmark(BenchmarkFamily::katsura, 3);
  EXPECT_EQ(s.num_variables(), 4u);
  EXPECT_EQ(s.size(), 4u);
  const auto d = s.degrees();
  EXPECT_EQ(std::count(d.begin(), d.end(), 1), 1);
  EXPECT_EQ(std::count(d.begin(), d.end(), 2), 3);
}

TEST(Generate, RejectsSmallAndUnknown) {
  EXPECT_THROW((void)generate_benchmark(BenchmarkFamily::cyclic, 1), std::invalid_argument);
  EXPECT_THROW((void)parse_family("noon"), std::invalid_argument);
  EXPECT_EQ(parse_family("katsura"), BenchmarkFamily::katsura);
}

TEST(Polynomial, NormalizesTerms) {
  const Polynomial p(1, {{2.0, {1}}, {-2.0, {1}}, {0.0, {3}}, {1.0, {0}}});
  ASSERT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.terms()[0].exponents, std::vector<int>{0});
  EXPECT_EQ(p.degree(), 0);
}
