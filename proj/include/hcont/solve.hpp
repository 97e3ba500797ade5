#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcont/algebra.hpp"
#include "hcont/tracker.hpp"

namespace hcont {

struct SolveOptions {
  TrackerOptions tracker;
  /// Worker threads; 0 picks the hardware concurrency.
  int threads = 1;
  double refine_tolerance = 1e-12;
  int refine_iterations = 8;
  /// Projective distance below which two endpoints are the same solution.
  double dedup_tolerance = 1e-6;
  /// Endpoints with |x0| / |x| below this are reported as solutions at infinity.
  double infinity_tolerance = 1e-8;

  void validate() const;
};

struct Solution {
  /// Affine coordinates in the target's variables.
  CVector point;
  /// |F(x)| / (1 + |x|^d), d the largest degree of F.
  double residual = 0.0;
  int multiplicity = 1;
  /// Indices of the paths that ended here.
  std::vector<std::size_t> paths;
};

struct PathRecord {
  std::size_t index = 0;
  PathStatus status = PathStatus::success;
  double t_reached = 0.0;
  StepStats stats;
  bool at_infinity = false;
  /// Index into SolveReport::solutions for finite successful endpoints.
  std::optional<std::size_t> solution;
};

struct Aggregates {
  std::size_t paths = 0;
  double mean_accepted = 0.0;
  double mean_rejected = 0.0;
  double mean_total = 0.0;
  double mean_newton_iterations = 0.0;
  double mean_tangent_solves = 0.0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  std::size_t step_size_too_small = 0;
  std::size_t singular_jacobian = 0;
  std::size_t diverged = 0;
  std::size_t max_steps_exceeded = 0;
  std::size_t at_infinity = 0;

  static Aggregates from_paths(const std::vector<PathRecord>& paths);
};

struct SolveReport {
  std::uint64_t seed = 0;
  Complex gamma;
  TrackerOptions options;
  int threads = 1;
  std::vector<std::string> variables;
  std::vector<Solution> solutions;
  std::vector<PathRecord> paths;
  Aggregates aggregates;
  double seconds = 0.0;
};

/// Unit-modulus constant of the straight-line homotopy drawn from `seed`.
[[nodiscard]] Complex draw_gamma(std::uint64_t seed);

/// Seed of the fixed random patch of path `index`.
[[nodiscard]] std::uint64_t path_seed(std::uint64_t seed, std::size_t index);

/// Tracks every start solution through `h`, running `threads` paths at a time.
/// Results are in start-solution order regardless of scheduling.
[[nodiscard]] std::vector<PathResult> track_all(const PathSystem& h, const std::vector<CVector>& starts,
                                                const TrackerOptions& opts, int threads, std::uint64_t seed);

/// Total-degree homotopy solve of a square system.
[[nodiscard]] SolveReport solve(const PolynomialSystem& target, const SolveOptions& opts, std::uint64_t seed);

/// |F(x)| / (1 + |x|^d) for an affine point x.
[[nodiscard]] double scaled_residual(const PolynomialSystem& target, const CVector& x);

struct BenchmarkRow {
  ControllerKind controller = ControllerKind::adaptive;
  double mean_accepted = 0.0;
  double mean_rejected = 0.0;
  double mean_total = 0.0;
  /// mean_total relative to the first row.
  double ratio = 1.0;
};

struct BenchmarkTable {
  int runs = 0;
  std::size_t paths = 0;
  std::vector<BenchmarkRow> rows;
};

/// Mean steps per path for each option set over `runs` gamma draws; every
/// option set sees the same draws.
[[nodiscard]] BenchmarkTable benchmark(const PolynomialSystem& target, const std::vector<SolveOptions>& variants,
                                       int runs, std::uint64_t seed);

struct PredictorRow {
  PredictorKind predictor = PredictorKind::euler;
  double seconds = 0.0;
  /// seconds relative to the Euler row.
  double normalized_runtime = 1.0;
  double mean_accepted = 0.0;
  double mean_rejected = 0.0;
  double mean_total = 0.0;
  double mean_tangent_solves = 0.0;
};

/// Runtime and step counts per predictor. Euler is always measured, first,
/// since runtimes are normalized by it.
[[nodiscard]] std::vector<PredictorRow> compare_predictors(const PolynomialSystem& target, const SolveOptions& opts,
                                                           std::vector<PredictorKind> predictors, int runs,
                                                           std::uint64_t seed);

}  // namespace hcont
