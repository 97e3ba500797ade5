#include "hcont/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "hcont/linalg.hpp"

namespace hcont {

void TrackerOptions::validate() const {
  corrector.validate();
  constants.validate();
  if (!(t_end >= 0.0 && t_end <= t_start && t_start <= 1.0)) {
    throw std::invalid_argument("tracking interval must satisfy 0 <= t_end <= t_start <= 1");
  }
  if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");
}

std::string_view to_string(PathStatus status) {
  switch (status) {
    case PathStatus::success: return "success";
    case PathStatus::step_size_too_small: return "step_size_too_small";
    case PathStatus::singular_jacobian: return "singular_jacobian";
    case PathStatus::diverged: return "diverged";
    case PathStatus::max_steps_exceeded: return "max_steps_exceeded";
  }
  return "unknown";
}

PathStatus parse_path_status(std::string_view name) {
  for (PathStatus s : {PathStatus::success, PathStatus::step_size_too_small, PathStatus::singular_jacobian,
                       PathStatus::diverged, PathStatus::max_steps_exceeded}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown path status: " + std::string(name));
}

namespace {

constexpr double kDivergenceNorm = 1e14;

/// Dispatches to whichever controller the options select.
class StepController {
 public:
  StepController(const TrackerOptions& opts) : kind_(opts.controller) {
    if (kind_ == ControllerKind::adaptive) {
      adaptive_.emplace(opts.constants, predictor_order(opts.predictor), opts.corrector.max_newton_iters,
                        opts.corrector.tau);
    } else {
      simple_.emplace(opts.constants);
    }
  }

  [[nodiscard]] double dt() const { return adaptive_ ? adaptive_->dt() : simple_->dt(); }
  [[nodiscard]] double omega() const { return adaptive_ ? adaptive_->omega() : 0.0; }

  void accepted(const CorrectorResult& corr, double prediction_error, double dt_used, double remaining,
                double x_norm) {
    if (adaptive_) adaptive_->on_success(corr.significant_norms(), prediction_error, dt_used, remaining, x_norm);
    else simple_->update(true);
  }

  void rejected(const CorrectorResult& corr, double dt_used) {
    if (adaptive_) adaptive_->on_failure(corr.theta0(), dt_used, corr.significant_norms());
    else simple_->update(false);
  }

 private:
  ControllerKind kind_;
  std::optional<AdaptiveController> adaptive_;
  std::optional<SimpleController> simple_;
};

}  // namespace

PathResult track(const PathSystem& h, const CVector& x_start, const TrackerOptions& opts) {
  opts.validate();
  PathResult result;
  result.t_reached = opts.t_start;
  CVector x = x_start;

  PatchStrategy patch;
  std::optional<PatchedHomotopy> patched;
  if (opts.patch != PatchKind::none) {
    patch = init_patch(opts.patch, x, opts.patch_seed);
    patched.emplace(h, patch.vector);
  }
  const PathSystem& sys = patched ? static_cast<const PathSystem&>(*patched) : h;

  StepController controller(opts);
  TangentCache cache;
  StepStats& stats = result.stats;
  double t = opts.t_start;

  auto finish = [&](PathStatus status) {
    result.status = status;
    result.endpoint = x;
    result.t_reached = t;
    return result;
  };

  while (t > opts.t_end) {
    if (stats.total() >= opts.max_steps) return finish(PathStatus::max_steps_exceeded);

    const double remaining = t - opts.t_end;
    const double step = std::min(controller.dt(), remaining);
    const double t_next = step >= remaining ? opts.t_end : t - step;

    std::optional<Prediction> prediction;
    try {
      prediction = predict(opts.predictor, sys, x, t, step, cache);
    } catch (const SingularMatrixError&) {
      // A singular first stage means the current point itself is singular.
      if (!cache.matches(x, t)) return finish(PathStatus::singular_jacobian);
    }

    CorrectorResult corr;
    if (prediction) {
      stats.tangent_solves += prediction->tangent_solves;
      corr = newton_correct(sys, prediction->point, t_next, opts.corrector);
      stats.newton_iters_total += corr.iterations;
    } else {
      corr.status = CorrectorStatus::singular_jacobian;
    }

    StepEvent event;
    event.t_from = t;
    event.t_to = t_next;
    event.dt = step;
    event.tangent_solves = prediction ? prediction->tangent_solves : 0;
    event.newton_iterations = corr.iterations;
    event.corrector = &corr;
    event.system = &sys;

    if (corr.converged) {
      CVector next = corr.point();
      const double prediction_error = norm2(prediction->point - next);
      if (!next.allFinite() || norm2(next) > kDivergenceNorm) return finish(PathStatus::diverged);
      if (patched) {
        update_patch(patch, next);
        patched->set_patch(patch.vector);
      }
      x = std::move(next);
      t = t_next;
      cache.invalidate();
      ++stats.accepted;
      result.accuracy_bound = corr.accuracy_bound;
      controller.accepted(corr, prediction_error, step, t - opts.t_end, norm2(x));
      event.accepted = true;
    } else {
      ++stats.rejected;
      controller.rejected(corr, step);
    }

    event.x = &x;
    event.omega = controller.omega();
    if (opts.observer) opts.observer(event);

    if (!corr.converged && step <= opts.constants.dt_min) return finish(PathStatus::step_size_too_small);
  }
  return finish(PathStatus::success);
}

}  // namespace hcont
