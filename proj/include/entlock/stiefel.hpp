#pragma once

#include <functional>

#include "entlock/linalg.hpp"

namespace entlock {

/// Objective on isometries V (V^dag V = I). Returns f(V); when `egrad` is
/// non-null also writes the Euclidean gradient G, defined by
/// df = Re Tr(G^dag dV).
using StiefelObjective = std::function<double(const CMatrix& v, CMatrix* egrad)>;

struct StiefelOptions {
  int max_iters = 2000;
  double step_tol = 1e-8;
  double value_tol = 1e-7;
};

struct StiefelResult {
  CMatrix point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Non-finite objective, or no decrease possible from the start despite a
  /// non-negligible gradient.
  bool failed = false;
};

/// Tangent-space projection Z - V herm(V^dag Z).
CMatrix stiefel_project(const CMatrix& v, const CMatrix& z);

/// Polar retraction of V + xi.
CMatrix stiefel_retract(const CMatrix& v, const CMatrix& xi);

/// Riemannian conjugate gradient (Polak-Ribiere+, projection transport) with
/// Armijo backtracking. Stops when the accepted step is below step_tol, when
/// the decrease stays below value_tol for three consecutive iterations, or
/// when the line search cannot make progress.
StiefelResult minimize_on_stiefel(const StiefelObjective& f, CMatrix start, const StiefelOptions& opts);

}  // namespace entlock
