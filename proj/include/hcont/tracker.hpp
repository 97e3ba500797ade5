#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

#include "hcont/corrector.hpp"
#include "hcont/homotopy.hpp"
#include "hcont/predictor.hpp"
#include "hcont/projective.hpp"
#include "hcont/stepcontrol.hpp"

namespace hcont {

/// One step attempt, reported to TrackerOptions::observer.
struct StepEvent {
  bool accepted = false;
  double t_from = 0.0;
  double t_to = 0.0;  // target of the attempt
  double dt = 0.0;
  int tangent_solves = 0;
  int newton_iterations = 0;
  /// Current point after the attempt (rescaled onto the new chart when accepted).
  const CVector* x = nullptr;
  /// System the next step will use, including the current chart row.
  const PathSystem* system = nullptr;
  const CorrectorResult* corrector = nullptr;
  double omega = 0.0;  // adaptive controller estimate after the update (0 for simple)
};

using StepObserver = std::function<void(const StepEvent&)>;

struct TrackerOptions {
  PredictorKind predictor = PredictorKind::heun;
  ControllerKind controller = ControllerKind::adaptive;
  CorrectorOptions corrector;
  PatchKind patch = PatchKind::orthogonal;
  double t_start = 1.0;
  double t_end = 0.0;
  ControllerConstants constants;
  /// Bound on step attempts per path.
  int max_steps = 20000;
  /// Seed of the fixed random patch.
  std::uint64_t patch_seed = 0;
  StepObserver observer;

  void validate() const;
};

enum class PathStatus { success, step_size_too_small, singular_jacobian, diverged, max_steps_exceeded };

[[nodiscard]] std::string_view to_string(PathStatus status);
[[nodiscard]] PathStatus parse_path_status(std::string_view name);

struct StepStats {
  int accepted = 0;
  int rejected = 0;
  int newton_iters_total = 0;
  int tangent_solves = 0;

  [[nodiscard]] int total() const { return accepted + rejected; }
};

struct PathResult {
  PathStatus status = PathStatus::success;
  /// Representative of the endpoint (on the final chart when patched).
  CVector endpoint;
  double t_reached = 0.0;
  StepStats stats;
  /// Corrector accuracy bound of the last accepted step.
  double accuracy_bound = 0.0;
};

/// Tracks one solution path of `h` from opts.t_start down to opts.t_end.
/// With a patch, `h` is taken as homogeneous and a chart row is appended.
/// Numerical failures are reported through PathResult::status.
[[nodiscard]] PathResult track(const PathSystem& h, const CVector& x_start, const TrackerOptions& opts);

}  // namespace hcont
