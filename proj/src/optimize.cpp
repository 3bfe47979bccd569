#include "optimize.hpp"

namespace caplab::detail {

namespace {

// Objective failures (e.g. a numerically invalid state far out in parameter
// space) count as -inf so the line search backs off.
double safe_eval(const Objective& f, const RVector& x) {
  try {
    const double v = f(x);
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  } catch (const ValidationError&) {
    return -std::numeric_limits<double>::infinity();
  }
}

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;
// Gradient size below which a stalled line search still counts as converged;
// finite-difference noise keeps the gradient from reaching exact zero.
constexpr double kStallGradient = 1e-5;

}  // namespace

RVector central_gradient(const Objective& f, const RVector& x, double h) {
  RVector g(x.size());
  RVector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double up = safe_eval(f, probe);
    probe(i) = x(i) - h;
    const double down = safe_eval(f, probe);
    probe(i) = x(i);
    g(i) = (up - down) / (2.0 * h);
    if (!std::isfinite(g(i))) g(i) = 0.0;
  }
  return g;
}

MaximizeResult maximize(const Objective& f, RVector x0, const MaximizeOptions& opt) {
  const Eigen::Index n = x0.size();
  MaximizeResult res;
  res.x = std::move(x0);
  res.value = safe_eval(f, res.x);
  if (n == 0) {
    res.converged = true;
    return res;
  }

  RVector g = central_gradient(f, res.x, opt.fd_step);
  Eigen::MatrixXd inv_hess = Eigen::MatrixXd::Identity(n, n);  // of -f
  bool fresh_hessian = true;
  int small_gains = 0;

  for (res.iterations = 0; res.iterations < opt.max_iters; ++res.iterations) {
    res.gradient_norm = g.norm();
    if (res.gradient_norm <= opt.gradient_tolerance) {
      res.converged = true;
      break;
    }

    RVector dir = inv_hess * g;
    if (g.dot(dir) <= 0.0) {
      inv_hess.setIdentity();
      fresh_hessian = true;
      dir = g;
    }
    if (const double len = dir.norm(); len > opt.max_step) dir *= opt.max_step / len;

    const double slope = g.dot(dir);
    double t = 1.0;
    double next_value = -std::numeric_limits<double>::infinity();
    RVector next;
    while (t >= kMinStep) {
      next = res.x + t * dir;
      next_value = safe_eval(f, next);
      if (next_value >= res.value + kArmijo * t * slope) break;
      t *= 0.5;
    }

    if (t < kMinStep) {
      if (!fresh_hessian) {
        inv_hess.setIdentity();
        fresh_hessian = true;
        continue;
      }
      res.converged = res.gradient_norm <= kStallGradient;
      break;
    }

    const RVector next_g = central_gradient(f, next, opt.fd_step);
    const RVector s = next - res.x;
    const RVector y = g - next_g;  // gradient change of -f
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      inv_hess = (eye - rho * s * y.transpose()) * inv_hess * (eye - rho * y * s.transpose()) +
                 rho * s * s.transpose();
      fresh_hessian = false;
    }

    const double gain = next_value - res.value;
    res.x = next;
    res.value = next_value;
    g = next_g;

    small_gains = gain < opt.step_tolerance ? small_gains + 1 : 0;
    if (small_gains >= 2 && g.norm() <= kStallGradient) {
      res.gradient_norm = g.norm();
      res.converged = true;
      ++res.iterations;
      break;
    }
  }
  res.gradient_norm = g.norm();
  return res;
}

}  // namespace caplab::detail
