#include <gtest/gtest.h>

#include <algorithm>

#include "helpers.hpp"
#include "hcont/solve.hpp"

using namespace hcont;
using namespace hcont::testing;

namespace {

void expect_same_stats(const SolveReport& a, const SolveReport& b) {
  ASSERT_EQ(a.paths.size(), b.paths.size());
  for (std::size_t i = 0; i < a.paths.size(); ++i) {
    EXPECT_EQ(a.paths[i].status, b.paths[i].status);
    EXPECT_EQ(a.paths[i].stats.accepted, b.paths[i].stats.accepted);
    EXPECT_EQ(a.paths[i].stats.rejected, b.paths[i].stats.rejected);
    EXPECT_EQ(a.paths[i].stats.newton_iters_total, b.paths[i].stats.newton_iters_total);
    EXPECT_EQ(a.paths[i].stats.tangent_solves, b.paths[i].stats.tangent_solves);
    EXPECT_EQ(a.paths[i].solution, b.paths[i].solution);
  }
  ASSERT_EQ(a.solutions.size(), b.solutions.size());
  for (std::size_t s = 0; s < a.solutions.size(); ++s) EXPECT_EQ(a.solutions[s].point, b.solutions[s].point);
}

}  // namespace

TEST(Solve, Quadratic) {
  const SolveReport r = solve(system_of("vars: x\nx^2 - 1\n"), SolveOptions{}, 1);
  ASSERT_EQ(r.paths.size(), 2u);
  for (const auto& p : r.paths) EXPECT_EQ(p.status, PathStatus::success);
  ASSERT_EQ(r.solutions.size(), 2u);
  std::vector<double> roots;
  for (const auto& s : r.solutions) {
    EXPECT_LT(std::abs(s.point[0].imag()), 1e-12);
    roots.push_back(s.point[0].real());
    EXPECT_LT(s.residual, 1e-12);
    EXPECT_EQ(s.multiplicity, 1);
  }
  std::sort(roots.begin(), roots.end());
  EXPECT_NEAR(roots[0], -1.0, 1e-12);
  EXPECT_NEAR(roots[1], 1.0, 1e-12);
  EXPECT_EQ(r.variables, std::vector<std::string>{"x"});
}

TEST(Solve, InfiniteEndpointsAreFlagged) {
  // x*y - 1 and x - 1 have one finite root but Bezout number 2.
  const SolveReport r = solve(system_of("vars: x, y\nx*y - 1\nx - 1\n"), SolveOptions{}, 2);
  EXPECT_EQ(r.paths.size(), 2u);
  ASSERT_EQ(r.solutions.size(), 1u);
  EXPECT_LT((r.solutions[0].point - CVector::Ones(2)).norm(), 1e-10);
}

TEST(Solve, CyclicFive) {
  const SolveReport r = solve(generate_benchmark(BenchmarkFamily::cyclic, 5), SolveOptions{}, 1);
  EXPECT_EQ(r.paths.size(), 120u);
  EXPECT_EQ(r.solutions.size(), 70u);
  for (const auto& s : r.solutions) {
    EXPECT_LT(s.residual, 1e-8);
    EXPECT_EQ(s.multiplicity, 1);
  }
  for (const auto& p : r.paths) {
    if (p.solution) {
      EXPECT_EQ(p.status, PathStatus::success);
    }
  }
}

TEST(Solve, KatsuraFive) {
  const SolveReport r = solve(generate_benchmark(BenchmarkFamily::katsura, 5), SolveOptions{}, 3);
  EXPECT_EQ(r.solutions.size(), 32u);
  EXPECT_EQ(r.aggregates.failures, 0u);
}

TEST(Solve, AggregatesRecomputable) {
  const SolveReport r = solve(generate_benchmark(BenchmarkFamily::cyclic, 4), SolveOptions{}, 7);
  double acc = 0, rej = 0;
  std::size_t ok = 0;
  for (const auto& p : r.paths) {
    acc += p.stats.accepted;
    rej += p.stats.rejected;
    ok += p.status == PathStatus::success;
  }
  const double n = static_cast<double>(r.paths.size());
  EXPECT_NEAR(r.aggregates.mean_accepted, acc / n, 1e-12);
  EXPECT_NEAR(r.aggregates.mean_rejected, rej / n, 1e-12);
  EXPECT_NEAR(r.aggregates.mean_total, (acc + rej) / n, 1e-12);
  EXPECT_EQ(r.aggregates.successes, ok);
  EXPECT_EQ(r.aggregates.successes + r.aggregates.failures, r.paths.size());
}

TEST(Solve, Deterministic) {
  const PolynomialSystem f = generate_benchmark(BenchmarkFamily::cyclic, 5);
  const SolveReport a = solve(f, SolveOptions{}, 11);
  const SolveReport b = solve(f, SolveOptions{}, 11);
  expect_same_stats(a, b);
  EXPECT_EQ(a.gamma, b.gamma);
  SolveOptions threaded;
  threaded.threads = 3;
  expect_same_stats(a, solve(f, threaded, 11));
  const SolveReport c = solve(f, SolveOptions{}, 12);
  EXPECT_NE(a.gamma, c.gamma);
  EXPECT_EQ(c.solutions.size(), a.solutions.size());
}

TEST(Solve, FixedPatchFindsSameRoots) {
  SolveOptions o;
  o.tracker.patch = PatchKind::fixed_random;
  const SolveReport r = solve(generate_benchmark(BenchmarkFamily::cyclic, 5), o, 1);
  EXPECT_EQ(r.solutions.size(), 70u);
}

TEST(Solve, RejectsNonSquare) {
  EXPECT_THROW((void)solve(system_of("vars: x, y\nx + y\n"), SolveOptions{}, 1), std::invalid_argument);
  SolveOptions o;
  o.threads = -1;
  EXPECT_THROW((void)solve(system_of("vars: x\nx - 1\n"), o, 1), std::invalid_argument);
}

TEST(Solve, GammaAndSeeds) {
  EXPECT_NEAR(std::abs(draw_gamma(5)), 1.0, 1e-15);
  EXPECT_EQ(draw_gamma(5), draw_gamma(5));
  EXPECT_NE(path_seed(1, 0), path_seed(1, 1));
  EXPECT_NE(path_seed(1, 0), path_seed(2, 0));
}

TEST(Benchmark, SelfComparisonIsExactlyOne) {
  SolveOptions o;
  o.tracker.t_end = 0.1;
  const BenchmarkTable t = benchmark(generate_benchmark(BenchmarkFamily::cyclic, 4), {o, o}, 2, 1);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1].ratio, 1.0);
  EXPECT_EQ(t.rows[0].mean_total, t.rows[1].mean_total);
  EXPECT_EQ(t.paths, 24u);
}

TEST(Benchmark, TwoControllersOnQuadratic) {
  SolveOptions simple, adaptive;
  simple.tracker.controller = ControllerKind::simple;
  const BenchmarkTable t = benchmark(system_of("vars: x\nx^2 - 1\n"), {simple, adaptive}, 3, 1);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].controller, ControllerKind::simple);
  EXPECT_EQ(t.rows[1].controller, ControllerKind::adaptive);
  EXPECT_NEAR(t.rows[1].ratio, t.rows[1].mean_total / t.rows[0].mean_total, 1e-15);
  for (const auto& row : t.rows) EXPECT_NEAR(row.mean_total, row.mean_accepted + row.mean_rejected, 1e-12);
  EXPECT_THROW((void)benchmark(system_of("vars: x\nx^2 - 1\n"), {simple}, 0, 1), std::invalid_argument);
}

TEST(Predictors, EulerIsTheUnit) {
  SolveOptions o;
  o.tracker.t_end = 0.1;
  const auto rows = compare_predictors(generate_benchmark(BenchmarkFamily::cyclic, 4), o,
                                       {PredictorKind::heun, PredictorKind::rk4}, 1, 1);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].predictor, PredictorKind::euler);
  EXPECT_EQ(rows[0].normalized_runtime, 1.0);
  EXPECT_LT(rows[1].mean_total, rows[0].mean_total);
  EXPECT_GT(rows[0].mean_tangent_solves, 0.0);
}
