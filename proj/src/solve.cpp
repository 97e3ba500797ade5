#include "hcont/solve.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "hcont/corrector.hpp"
#include "hcont/homotopy.hpp"
#include "hcont/linalg.hpp"

namespace hcont {

void SolveOptions::validate() const {
  tracker.validate();
  if (threads < 0) throw std::invalid_argument("thread count must be non-negative");
  if (!(refine_tolerance > 0.0)) throw std::invalid_argument("refine tolerance must be positive");
  if (refine_iterations < 0) throw std::invalid_argument("refine iterations must be non-negative");
  if (!(dedup_tolerance > 0.0)) throw std::invalid_argument("dedup tolerance must be positive");
  if (!(infinity_tolerance >= 0.0)) throw std::invalid_argument("infinity tolerance must be non-negative");
}

Aggregates Aggregates::from_paths(const std::vector<PathRecord>& paths) {
  Aggregates a;
  a.paths = paths.size();
  for (const PathRecord& p : paths) {
    a.mean_accepted += p.stats.accepted;
    a.mean_rejected += p.stats.rejected;
    a.mean_total += p.stats.total();
    a.mean_newton_iterations += p.stats.newton_iters_total;
    a.mean_tangent_solves += p.stats.tangent_solves;
    if (p.at_infinity) ++a.at_infinity;
    switch (p.status) {
      case PathStatus::success: ++a.successes; continue;
      case PathStatus::step_size_too_small: ++a.step_size_too_small; break;
      case PathStatus::singular_jacobian: ++a.singular_jacobian; break;
      case PathStatus::diverged: ++a.diverged; break;
      case PathStatus::max_steps_exceeded: ++a.max_steps_exceeded; break;
    }
    ++a.failures;
  }
  if (!paths.empty()) {
    const double n = static_cast<double>(paths.size());
    a.mean_accepted /= n;
    a.mean_rejected /= n;
    a.mean_total /= n;
    a.mean_newton_iterations /= n;
    a.mean_tangent_solves /= n;
  }
  return a;
}

Complex draw_gamma(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

std::uint64_t path_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

int worker_count(int threads, std::size_t jobs) {
  int n = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(jobs, 1)));
}

template <typename Job>
void parallel_for(std::size_t count, int threads, Job job) {
  const int workers = worker_count(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct Problem {
  PolynomialSystem target;
  PolynomialSystem homogeneous;
  PolynomialSystem start;
  std::vector<CVector> starts;
};

Problem prepare(const PolynomialSystem& target) {
  if (!target.is_square()) throw std::invalid_argument("solve needs a square system");
  StartPair pair = total_degree_start(target);
  std::vector<CVector> starts;
  starts.reserve(pair.solutions.size());
  for (const CVector& s : pair.solutions) {
    CVector y(s.size() + 1);
    y[0] = 1.0;
    y.tail(s.size()) = s;
    starts.push_back(std::move(y));
  }
  return {target, homogenize(target), homogenize(pair.system), std::move(starts)};
}

double mean_of(const std::vector<PathResult>& results, int StepStats::*field) {
  double sum = 0.0;
  for (const auto& r : results) sum += r.stats.*field;
  return results.empty() ? 0.0 : sum / static_cast<double>(results.size());
}

double mean_total(const std::vector<PathResult>& results) {
  double sum = 0.0;
  for (const auto& r : results) sum += r.stats.total();
  return results.empty() ? 0.0 : sum / static_cast<double>(results.size());
}

}  // namespace

std::vector<PathResult> track_all(const PathSystem& h, const std::vector<CVector>& starts, const TrackerOptions& opts,
                                  int threads, std::uint64_t seed) {
  opts.validate();
  std::vector<PathResult> results(starts.size());
  parallel_for(starts.size(), threads, [&](std::size_t i) {
    TrackerOptions local = opts;
    local.patch_seed = path_seed(seed, i);
    results[i] = track(h, starts[i], local);
  });
  return results;
}

double scaled_residual(const PolynomialSystem& target, const CVector& x) {
  const auto degrees = target.degrees();
  const int d = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
  return norm2(target.evaluate(x)) / (1.0 + std::pow(norm2(x), d));
}

SolveReport solve(const PolynomialSystem& target, const SolveOptions& opts, std::uint64_t seed) {
  opts.validate();
  const auto clock_start = std::chrono::steady_clock::now();
  const Problem problem = prepare(target);

  SolveReport report;
  report.seed = seed;
  report.gamma = draw_gamma(seed);
  report.options = opts.tracker;
  report.options.observer = nullptr;
  report.threads = opts.threads;
  report.variables = target.variable_names();

  const Homotopy h = straight_line(problem.homogeneous, problem.start, report.gamma);
  const std::vector<PathResult> results = track_all(h, problem.starts, opts.tracker, opts.threads, seed);

  // Polish endpoints on a fresh orthogonal chart.
  const double t_end = opts.tracker.t_end;
  std::vector<CVector> endpoints(results.size());
  parallel_for(results.size(), opts.threads, [&](std::size_t i) {
    CVector y = results[i].endpoint;
    y /= norm2(y);
    if (results[i].status == PathStatus::success && opts.refine_iterations > 0) {
      const PatchedHomotopy chart(h, y);
      try {
        y = refine(chart, y, t_end, opts.refine_tolerance, opts.refine_iterations);
        y /= norm2(y);
      } catch (const std::runtime_error&) {
        // Keep the tracked endpoint.
      }
    }
    endpoints[i] = std::move(y);
  });

  report.paths.resize(results.size());
  std::vector<std::size_t> representative;  // path index of each solution's first endpoint
  for (std::size_t i = 0; i < results.size(); ++i) {
    PathRecord& rec = report.paths[i];
    rec.index = i;
    rec.status = results[i].status;
    rec.t_reached = results[i].t_reached;
    rec.stats = results[i].stats;
    const CVector& y = endpoints[i];
    rec.at_infinity = !(std::abs(y[0]) > opts.infinity_tolerance * norm2(y));
    if (rec.status != PathStatus::success || rec.at_infinity) continue;

    std::optional<std::size_t> match;
    for (std::size_t s = 0; s < representative.size(); ++s) {
      if (projective_distance(endpoints[representative[s]], y) < opts.dedup_tolerance) {
        match = s;
        break;
      }
    }
    if (match) {
      Solution& sol = report.solutions[*match];
      ++sol.multiplicity;
      sol.paths.push_back(i);
    } else {
      match = report.solutions.size();
      Solution sol;
      sol.point = dehomogenize(y);
      sol.residual = scaled_residual(target, sol.point);
      sol.paths.push_back(i);
      report.solutions.push_back(std::move(sol));
      representative.push_back(i);
    }
    rec.solution = match;
  }

  report.aggregates = Aggregates::from_paths(report.paths);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  return report;
}

BenchmarkTable benchmark(const PolynomialSystem& target, const std::vector<SolveOptions>& variants, int runs,
                         std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("benchmark needs at least one run");
  if (variants.empty()) throw std::invalid_argument("benchmark needs at least one option set");
  for (const auto& v : variants) v.validate();
  const Problem problem = prepare(target);

  BenchmarkTable table;
  table.runs = runs;
  table.paths = problem.starts.size();
  table.rows.resize(variants.size());
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t run_seed = seed + static_cast<std::uint64_t>(r);
    const Homotopy h = straight_line(problem.homogeneous, problem.start, draw_gamma(run_seed));
    for (std::size_t v = 0; v < variants.size(); ++v) {
      const auto results = track_all(h, problem.starts, variants[v].tracker, variants[v].threads, run_seed);
      BenchmarkRow& row = table.rows[v];
      row.controller = variants[v].tracker.controller;
      row.mean_accepted += mean_of(results, &StepStats::accepted) / runs;
      row.mean_rejected += mean_of(results, &StepStats::rejected) / runs;
      row.mean_total += mean_total(results) / runs;
    }
  }
  for (BenchmarkRow& row : table.rows) {
    row.ratio = table.rows.front().mean_total > 0.0 ? row.mean_total / table.rows.front().mean_total : 1.0;
  }
  return table;
}

std::vector<PredictorRow> compare_predictors(const PolynomialSystem& target, const SolveOptions& opts,
                                             std::vector<PredictorKind> predictors, int runs, std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("predictor comparison needs at least one run");
  opts.validate();
  std::erase(predictors, PredictorKind::euler);
  predictors.insert(predictors.begin(), PredictorKind::euler);
  const Problem problem = prepare(target);

  std::vector<PredictorRow> rows(predictors.size());
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t run_seed = seed + static_cast<std::uint64_t>(r);
    const Homotopy h = straight_line(problem.homogeneous, problem.start, draw_gamma(run_seed));
    for (std::size_t k = 0; k < predictors.size(); ++k) {
      TrackerOptions tracker = opts.tracker;
      tracker.predictor = predictors[k];
      const auto start = std::chrono::steady_clock::now();
      const auto results = track_all(h, problem.starts, tracker, opts.threads, run_seed);
      PredictorRow& row = rows[k];
      row.predictor = predictors[k];
      row.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      row.mean_accepted += mean_of(results, &StepStats::accepted) / runs;
      row.mean_rejected += mean_of(results, &StepStats::rejected) / runs;
      row.mean_total += mean_total(results) / runs;
      row.mean_tangent_solves += mean_of(results, &StepStats::tangent_solves) / runs;
    }
  }
  for (PredictorRow& row : rows) {
    row.normalized_runtime = rows.front().seconds > 0.0 ? row.seconds / rows.front().seconds : 1.0;
  }
  rows.front().normalized_runtime = 1.0;
  return rows;
}

}  // namespace hcont
