#include <doctest.h>

#include "caplab/qmat.hpp"
#include "caplab/verify.hpp"

using namespace caplab;

namespace {

CMatrix diag(std::initializer_list<double> v) {
  RVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

CMatrix pauli_x() {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

CVector bell() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST_CASE("tensor_product examples") {
  CHECK(max_abs(tensor_product(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)) - CMatrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs(tensor_product(diag({1, 0}), diag({0.5, 0.5})) - diag({0.5, 0.5, 0, 0})) == 0.0);

  CVector ket00 = CVector::Zero(4);
  ket00(0) = 1.0;
  const CVector flipped = tensor_product(pauli_x(), pauli_x()) * ket00;
  CHECK(std::abs(flipped(3) - Complex(1.0)) == 0.0);
  CHECK(flipped.head(3).norm() == 0.0);
}

TEST_CASE("tensor_product: left factor is the slow index") {
  CMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 5, 6, 7, 8;
  const CMatrix k = tensor_product(a, b);
  CHECK(k(0, 1) == Complex(6));   // a00 * b01
  CHECK(k(0, 2) == Complex(10));  // a01 * b00
  CHECK(k(3, 0) == Complex(21));  // a10 * b10
}

TEST_CASE("tensor_product properties on random operands") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMatrix a = random_density(2, seed).matrix();
    const CMatrix b = random_density(3, seed + 100).matrix();
    const CMatrix c = random_unitary(2, seed + 200);
    CHECK(max_abs(tensor_product(tensor_product(a, b), c) - tensor_product(a, tensor_product(b, c))) < 1e-15);
    CHECK(std::abs(tensor_product(a, c).trace() - a.trace() * c.trace()) < 1e-10);
  }
}

TEST_CASE("partial_trace examples") {
  const DensityMatrix rho = random_density(2, 7);
  const DensityMatrix sigma = random_density(3, 8);
  const CMatrix prod = tensor_product(rho.matrix(), sigma.matrix());
  CHECK(max_abs(partial_trace(prod, {2, 3}, {0}) - rho.matrix()) < 1e-14);
  CHECK(max_abs(partial_trace(prod, {2, 3}, {1}) - sigma.matrix()) < 1e-14);

  const CMatrix phi = bell() * bell().adjoint();
  CHECK(max_abs(partial_trace(phi, {2, 2}, {0}) - diag({0.5, 0.5})) < 1e-15);
  CHECK(max_abs(partial_trace(phi, {2, 2}, {1}) - diag({0.5, 0.5})) < 1e-15);
}

TEST_CASE("partial_trace keeps subsystem order and handles three factors") {
  const CMatrix a = random_density(2, 1).matrix();
  const CMatrix b = random_density(3, 2).matrix();
  const CMatrix c = random_density(2, 3).matrix();
  const CMatrix abc = tensor_product(tensor_product(a, b), c);
  CHECK(max_abs(partial_trace(abc, {2, 3, 2}, {0, 2}) - tensor_product(a, c)) < 1e-14);
  CHECK(max_abs(partial_trace(abc, {2, 3, 2}, {2, 0}) - tensor_product(a, c)) < 1e-14);
  CHECK(max_abs(partial_trace(abc, {2, 3, 2}, {1}) - b) < 1e-14);
  CHECK(max_abs(partial_trace(abc, {2, 3, 2}, {0, 1, 2}) - abc) == 0.0);
}

TEST_CASE("partial_trace errors") {
  const CMatrix m = CMatrix::Identity(4, 4);
  CHECK_THROWS_AS(partial_trace(m, {2, 3}, {0}), DimensionError);
  CHECK_THROWS_AS(partial_trace(m, std::span<const int>(std::vector<int>{2, 2}), std::span<const int>()),
                  DimensionError);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {2}), DimensionError);
}

TEST_CASE("hermitian_spectrum examples") {
  auto s = hermitian_spectrum(diag({0.3, 0.7}));
  CHECK(s.values(0) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(s.values(1) == doctest::Approx(0.3).epsilon(1e-14));

  s = hermitian_spectrum(pauli_x());
  CHECK(s.values(0) == doctest::Approx(1.0));
  CHECK(s.values(1) == doctest::Approx(-1.0));

  CVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  s = hermitian_spectrum(CMatrix(plus * plus.adjoint()));
  CHECK(s.values(0) == doctest::Approx(1.0));
  CHECK(std::abs(s.values(1)) < 1e-15);
}

TEST_CASE("hermitian_spectrum works on real scalar matrices") {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const auto s = hermitian_spectrum(m);
  CHECK(s.values(0) == doctest::Approx(3.0));
  CHECK(s.values(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_spectrum rejects non-Hermitian input") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_spectrum(m), ValidationError);
}

TEST_CASE("hermitian_spectrum round trip and orthonormality") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CMatrix g = random_unitary(4, seed) * diag({0.9, -0.2, 0.1, 0.4}) * random_unitary(4, seed).adjoint();
    const CMatrix h = (g + g.adjoint()) / 2.0;
    const auto s = hermitian_spectrum(h);
    for (Eigen::Index i = 1; i < s.values.size(); ++i) CHECK(s.values(i - 1) >= s.values(i));
    CHECK(max_abs(s.vectors.adjoint() * s.vectors - CMatrix::Identity(4, 4)) < 1e-9);
    CHECK(max_abs(s.vectors * s.values.cast<Complex>().asDiagonal() * s.vectors.adjoint() - h) < 1e-9);
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix(diag({0.5, 0.5})));
  CHECK_THROWS_AS(DensityMatrix(diag({0.5, 0.6})), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(diag({1.1, -0.1})), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(CMatrix::Zero(2, 3)), DimensionError);

  CMatrix nonherm = diag({0.5, 0.5});
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{nonherm}, ValidationError);

  CMatrix nan = diag({0.5, 0.5});
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(DensityMatrix{nan}, ValidationError);
}

TEST_CASE("DensityMatrix clips small negative eigenvalues and renormalizes") {
  const DensityMatrix rho(diag({1.0 + 5e-9, -5e-9}));
  const auto ev = hermitian_eigenvalues(rho.matrix());
  CHECK(ev(1) >= 0.0);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-15);
}

TEST_CASE("purify examples") {
  auto phi = purify(DensityMatrix::maximally_mixed(2));
  const CVector a = phi.amplitudes();
  // Schmidt coefficients 1/sqrt(2), 1/sqrt(2): the coefficient matrix is
  // unitary / sqrt(2).
  CMatrix coeff(2, 2);
  coeff << a(0), a(1), a(2), a(3);
  CHECK(max_abs(coeff * coeff.adjoint() - diag({0.5, 0.5})) < 1e-15);

  phi = purify(DensityMatrix::basis(2, 0));
  CHECK(std::abs(std::abs(phi.amplitudes()(0)) - 1.0) < 1e-15);
  CHECK(phi.amplitudes().tail(3).norm() < 1e-15);

  const double p = 0.8;
  phi = purify(DensityMatrix(diag({p, 1 - p})));
  CHECK(std::abs(phi.amplitudes()(0)) == doctest::Approx(std::sqrt(p)));   // |e0>|0>
  CHECK(std::abs(phi.amplitudes()(3)) == doctest::Approx(std::sqrt(1 - p)));  // |e1>|1>
  CHECK(std::abs(phi.amplitudes()(1)) < 1e-15);
  CHECK(std::abs(phi.amplitudes()(2)) < 1e-15);
}

TEST_CASE("purify reconstructs the state and has matching reduced spectra") {
  for (int d = 1; d <= 4; ++d)
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const DensityMatrix rho = random_density(d, seed);
      const PureBipartiteState phi = purify(rho);
      CHECK(phi.dim_b() == d);
      CHECK(max_abs(partial_trace(phi.projector(), {d, d}, {0}) - rho.matrix()) < 1e-9);
      const RVector sa = hermitian_eigenvalues(phi.reduced_a().matrix());
      const RVector sb = hermitian_eigenvalues(phi.reduced_b().matrix());
      CHECK((sa - sb).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("PureBipartiteState validation") {
  CHECK_THROWS_AS(PureBipartiteState(2, 2, CVector::Ones(4)), ValidationError);
  CHECK_THROWS_AS(PureBipartiteState(2, 3, bell()), DimensionError);
}
