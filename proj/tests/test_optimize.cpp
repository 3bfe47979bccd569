#include <doctest.h>

#include "optimize.hpp"

using namespace caplab;
using namespace caplab::detail;

TEST_CASE("central_gradient on a quadratic") {
  const Objective f = [](const RVector& x) { return -(x(0) - 1) * (x(0) - 1) - 2 * x(1) * x(1); };
  RVector x(2);
  x << 0.0, 1.0;
  const RVector g = central_gradient(f, x, 1e-5);
  CHECK(g(0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(g(1) == doctest::Approx(-4.0).epsilon(1e-8));
}

TEST_CASE("maximize finds the peak of a concave function") {
  const Objective f = [](const RVector& x) {
    return -std::cosh(x(0) - 0.3) - (x(1) + 0.7) * (x(1) + 0.7) - 0.5 * x(0) * x(1);
  };
  const auto r = maximize(f, RVector::Zero(2), MaximizeOptions{});
  CHECK(r.converged);
  CHECK(r.gradient_norm < 1e-5);
  CHECK(r.value >= f(RVector::Zero(2)));
}

TEST_CASE("maximize treats objective errors as minus infinity") {
  const Objective f = [](const RVector& x) {
    if (x(0) > 1.0) throw ValidationError("outside");
    return -(x(0) - 2) * (x(0) - 2);
  };
  const auto r = maximize(f, RVector::Zero(1), MaximizeOptions{});
  CHECK(r.x(0) <= 1.0);
  CHECK(std::isfinite(r.value));
}
