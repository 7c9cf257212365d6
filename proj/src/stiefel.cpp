#include "entlock/stiefel.hpp"

#include <algorithm>
#include <cmath>

namespace entlock {

namespace {

double inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;
constexpr double kMaxStep = 1e3;

}  // namespace

CMatrix stiefel_project(const CMatrix& v, const CMatrix& z) {
  const CMatrix vz = v.adjoint() * z;
  return z - v * ((vz + vz.adjoint()) * 0.5);
}

CMatrix stiefel_retract(const CMatrix& v, const CMatrix& xi) { return polar_isometry(v + xi); }

StiefelResult minimize_on_stiefel(const StiefelObjective& f, CMatrix start, const StiefelOptions& opts) {
  StiefelResult res;
  res.point = std::move(start);
  CMatrix egrad;
  res.value = f(res.point, &egrad);
  if (!std::isfinite(res.value)) {
    res.failed = true;
    return res;
  }
  CMatrix grad = stiefel_project(res.point, egrad);
  CMatrix dir = -grad;
  double step = 1.0 / std::max(1.0, std::sqrt(inner(grad, grad)));
  int quiet = 0;
  bool reset_direction = false;

  for (res.iterations = 0; res.iterations < opts.max_iters;) {
    const double gnorm2 = inner(grad, grad);
    if (gnorm2 < 1e-24) {
      res.converged = true;
      break;
    }
    double slope = inner(grad, dir);
    bool steepest = false;
    if (reset_direction || !(slope < 0.0)) {
      dir = -grad;
      slope = -gnorm2;
      steepest = true;
      reset_direction = false;
    }

    double t = std::min(step * 2.0, kMaxStep);
    CMatrix trial;
    double trial_value = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      trial = stiefel_retract(res.point, t * dir);
      trial_value = f(trial, nullptr);
      if (std::isfinite(trial_value) && trial_value <= res.value + kArmijo * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (!steepest) {
        reset_direction = true;  // CG direction was poor; retry along the gradient
        continue;
      }
      // No sufficient decrease along -grad: numerically stationary. From the
      // very first point with a sizeable gradient this means the objective
      // and gradient disagree.
      res.failed = res.iterations == 0 && gnorm2 > 1e-12;
      res.converged = !res.failed;
      break;
    }

    ++res.iterations;
    const double decrease = res.value - trial_value;
    const double step_norm = t * std::sqrt(inner(dir, dir));
    res.point = std::move(trial);
    res.value = f(res.point, &egrad);
    const CMatrix new_grad = stiefel_project(res.point, egrad);
    const CMatrix old_grad = stiefel_project(res.point, grad);
    const double beta = std::max(0.0, inner(new_grad, new_grad - old_grad) / gnorm2);
    dir = -new_grad + beta * stiefel_project(res.point, dir);
    grad = new_grad;
    step = t;

    if (step_norm < opts.step_tol) {
      res.converged = true;
      break;
    }
    quiet = decrease < opts.value_tol ? quiet + 1 : 0;
    if (quiet >= 3) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace entlock
