// Unconstrained local maximization: BFGS on central finite-difference
// gradients with Armijo backtracking.
#pragma once

#include <functional>

#include "caplab/qmat.hpp"

namespace caplab::detail {

struct MaximizeOptions {
  int max_iters = 2000;
  double step_tolerance = 1e-9;  // per-iteration gain, in objective units
  double fd_step = 1e-5;
  double gradient_tolerance = 1e-9;
  double max_step = 2.0;
};

struct MaximizeResult {
  RVector x;
  double value = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
};

using Objective = std::function<double(const RVector&)>;

RVector central_gradient(const Objective& f, const RVector& x, double h);

MaximizeResult maximize(const Objective& f, RVector x0, const MaximizeOptions& opt);

}  // namespace caplab::detail
