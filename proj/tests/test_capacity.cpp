#include <doctest.h>

#include <random>

#include "caplab/capacity.hpp"
#include "caplab/verify.hpp"
#include "oracles.hpp"

using namespace caplab;

namespace {

OptimizerConfig quick(int restarts = 3) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  return cfg;
}

}  // namespace

TEST_CASE("OptimizerConfig validation") {
  OptimizerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.step_tolerance = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("exp_parameterized_state") {
  const auto mm = exp_parameterized_state(RVector::Zero(9), 3);
  CHECK(max_abs(mm.matrix() - DensityMatrix::maximally_mixed(3).matrix()) < 1e-15);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    RVector x(4);
    for (auto& v : x) v = 3.0 * g(rng);
    const auto rho = exp_parameterized_state(x, 2);
    CHECK(hermitian_eigenvalues(rho.matrix()).minCoeff() > 0.0);
  }
  CHECK_THROWS_AS(exp_parameterized_state(RVector::Zero(3), 2), DimensionError);
}

TEST_CASE("compute_ce examples") {
  auto r = compute_ce(identity_channel(2), quick());
  CHECK(r.value_bits == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r.converged);
  CHECK(max_abs(r.input_state().matrix() - DensityMatrix::maximally_mixed(2).matrix()) < 1e-3);

  r = compute_ce(depolarizing(1.0, 2), quick());
  CHECK(std::abs(r.value_bits) < 1e-6);

  // Fixture computed offline with an independent optimizer: 0.451205.
  r = compute_ce(depolarizing(0.5, 2), quick());
  CHECK(r.value_bits == doctest::Approx(0.451205059).epsilon(1e-6));
  CHECK(r.restart_values.size() == 3);

  r = compute_ce(erasure(0.5, 2), quick());
  CHECK(r.value_bits == doctest::Approx(1.0).epsilon(1e-6));

  // Amplitude damping has a non-uniform optimum; fixture 1.159688.
  r = compute_ce(amplitude_damping(0.4), quick());
  CHECK(r.value_bits == doctest::Approx(1.159688).epsilon(1e-5));
  CHECK(std::abs(r.input_state()(0, 0).real() - 0.5) > 1e-3);
}

TEST_CASE("compute_ce matches the Bloch grid oracle for depolarizing") {
  for (double p : {0.1, 0.35, 0.8}) {
    const double ce = compute_ce(depolarizing(p, 2), quick(2)).value_bits;
    const double grid = oracle::depolarizing_bloch_grid(p);
    CHECK(ce >= grid - 1e-9);
    CHECK(ce - grid < 1e-4);
  }
}

TEST_CASE("compute_ce dominates mutual information at random inputs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ch = random_channel(2, 2, 2, seed);
    const double ce = compute_ce(ch, quick(2)).value_bits;
    for (std::uint64_t s = 0; s < 10; ++s)
      CHECK(mutual_information(ch, random_density(2, seed * 100 + s)).bits() <= ce + 1e-9);
  }
}

TEST_CASE("compute_ce is reproducible for a fixed seed") {
  const auto ch = random_channel(2, 3, 2, 17);
  const auto a = compute_ce(ch, quick(2));
  const auto b = compute_ce(ch, quick(2));
  CHECK(a.value_bits == b.value_bits);
  CHECK(a.restart_values == b.restart_values);
}

TEST_CASE("compute_one_shot_c1 examples") {
  auto r = compute_one_shot_c1(identity_channel(2), quick());
  CHECK(r.lower_bound_only);
  CHECK(r.value_bits == doctest::Approx(1.0).epsilon(1e-6));

  r = compute_one_shot_c1(dephasing(1.0), quick());
  CHECK(r.value_bits == doctest::Approx(1.0).epsilon(1e-6));

  r = compute_one_shot_c1(depolarizing(1.0, 2), quick());
  CHECK(std::abs(r.value_bits) < 1e-6);
}

TEST_CASE("compute_one_shot_c1 beats a brute-force ensemble search") {
  // Oracle: 10^4 random two-member pure ensembles on the output of a fixed
  // random channel, built directly with Eigen.
  const auto ch = random_channel(2, 2, 2, 4);
  std::mt19937_64 rng(123);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double best = 0.0;
  for (int t = 0; t < 10000; ++t) {
    std::vector<DensityMatrix> outs;
    for (int k = 0; k < 2; ++k) {
      CVector v(2);
      for (auto& a : v) a = Complex(g(rng), g(rng));
      v.normalize();
      CMatrix out = CMatrix::Zero(2, 2);
      for (const auto& k_op : ch.kraus()) out += k_op * v * v.adjoint() * k_op.adjoint();
      outs.emplace_back(out);
    }
    const double w = u(rng);
    const CMatrix avg = w * outs[0].matrix() + (1 - w) * outs[1].matrix();
    const double chi = oracle::entropy_bits(avg) - w * oracle::entropy_bits(outs[0].matrix()) -
                       (1 - w) * oracle::entropy_bits(outs[1].matrix());
    best = std::max(best, chi);
  }
  const auto r = compute_one_shot_c1(ch, quick());
  CHECK(r.value_bits >= best - 1e-6);
  CHECK(r.value_bits <= compute_ce(ch, quick(2)).value_bits + 1e-6);
}

TEST_CASE("decomposition_report sums to the mutual information") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ch = random_channel(2, 3, 2, seed);
    const auto ens = random_pure_ensemble(2, 3, seed + 1);
    const auto rep = decomposition_report(ch, ens);
    CHECK(std::abs(rep.input_entropy + rep.chi_output - rep.chi_environment - rep.mutual_information_bits) < 1e-12);
    CHECK(std::abs(rep.mutual_information_bits - mutual_information(ch, ens.average()).bits()) < 1e-8);
  }
}

TEST_CASE("capacity_sweep") {
  const auto rows = capacity_sweep("depolarizing", {1.0, 0.0, 0.5}, quick(2));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].param == 0.0);
  CHECK(rows[2].param == 1.0);
  CHECK(rows[0].ce_bits == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(rows[1].ce_bits == doctest::Approx(0.451205059).epsilon(1e-6));
  CHECK(std::abs(rows[2].ce_bits) < 1e-6);
  CHECK_THROWS_AS(capacity_sweep("depolarizing", {1.5}, quick(2)), std::out_of_range);
}
