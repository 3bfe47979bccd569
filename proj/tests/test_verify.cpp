#include <doctest.h>

#include "caplab/verify.hpp"

using namespace caplab;

TEST_CASE("random generators are deterministic per seed") {
  CHECK(max_abs(random_density(3, 5).matrix() - random_density(3, 5).matrix()) == 0.0);
  CHECK(max_abs(random_density(3, 5).matrix() - random_density(3, 6).matrix()) > 0.0);
  const auto u = random_unitary(4, 2);
  CHECK(max_abs(u.adjoint() * u - CMatrix::Identity(4, 4)) < 1e-12);
  CHECK(validate_cptp(random_channel(3, 2, 4, 1)).pass);
  CHECK_THROWS(random_channel(4, 1, 2, 1));
}

TEST_CASE("random_decomposition averages to the state") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_density(3, seed);
    const auto ens = random_decomposition(rho, 5, seed + 9);
    CHECK(ens.size() == 5);
    CHECK(ens.all_pure());
    CHECK(max_abs(ens.average().matrix() - rho.matrix()) < 1e-9);
  }
}

TEST_CASE("suite registry") {
  CHECK(suite_ids().size() == 11);
  CHECK(is_capacity_suite("additivity"));
  CHECK_FALSE(is_capacity_suite("ssa"));
  CHECK(suite_tolerance("dp") == 1e-3);
  CHECK(suite_tolerance("ssa") == 1e-9);
  CHECK(suite_tolerance("eq3") == 1e-8);
  CHECK_THROWS_AS(suite_tolerance("nope"), std::invalid_argument);
  CHECK_THROWS_AS(run_trial("nope", 1), std::invalid_argument);
}

TEST_CASE("run_trial replays the witness of run_suite") {
  for (const char* id : {"ssa", "jsa", "monotonicity", "exchange-bound", "concavity", "decomp", "eq3"}) {
    const auto rep = run_suite(id, 20, 7);
    CHECK(rep.trials == 20);
    CHECK(rep.failures == 0);
    const auto replay = run_trial(id, rep.worst_witness.seed);
    CHECK(replay.margin == rep.worst_slack_bits);
    CHECK(replay.witness.params == rep.worst_witness.params);
  }
}

TEST_CASE("run_suite is independent of the worker count") {
  const auto a = run_suite("ssa", 30, 3);
  setenv("CAPLAB_THREADS", "1", 1);
  const auto b = run_suite("ssa", 30, 3);
  unsetenv("CAPLAB_THREADS");
  CHECK(a.worst_slack_bits == b.worst_slack_bits);
  CHECK(a.worst_witness.seed == b.worst_witness.seed);
}

TEST_CASE("capacity suites pass on a few trials") {
  for (const char* id : {"dp", "convexity", "bound"}) {
    const auto rep = run_suite(id, 3, 42);
    CHECK(rep.failures == 0);
  }
}
