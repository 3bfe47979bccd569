// Seeded random instances and the named inequality suites.
//
// Every suite evaluates one inequality as a margin (right side minus left
// side, in bits); a trial fails when its margin drops below -tolerance.
// Trial i is generated from seed + i alone, so any witness can be replayed
// with run_trial.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "caplab/channels.hpp"
#include "caplab/entropy.hpp"

namespace caplab {

/// Reduction of a Gaussian (Haar) pure state on dim x dim.
DensityMatrix random_density(int dim, std::uint64_t seed);
/// Normalized complex Gaussian vector.
CVector random_pure_vector(int dim, std::uint64_t seed);
/// Haar unitary: QR of a complex Gaussian matrix with R's phases removed.
CMatrix random_unitary(int dim, std::uint64_t seed);
/// Kraus family cut from a random isometry dim_in -> dim_out x kraus_rank.
QuantumChannel random_channel(int dim_in, int dim_out, int kraus_rank, std::uint64_t seed);
Ensemble random_pure_ensemble(int dim, int size, std::uint64_t seed);
/// Pure-state decomposition of rho with `size` >= rho.dim() members, obtained
/// by rotating the spectral decomposition with a random unitary on the
/// probability register.
Ensemble random_decomposition(const DensityMatrix& rho, int size, std::uint64_t seed);

struct Witness {
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
};

struct SuiteReport {
  std::string suite_id;
  int trials = 0;
  int failures = 0;
  double worst_slack_bits = 0.0;
  Witness worst_witness;
  double elapsed_seconds = 0.0;
};

struct TrialOutcome {
  double margin = 0.0;
  Witness witness;
};

/// dp, convexity, additivity, ssa, jsa, monotonicity, exchange-bound,
/// concavity, decomp, bound, eq3.
const std::vector<std::string>& suite_ids();
bool is_capacity_suite(const std::string& suite_id);
double suite_tolerance(const std::string& suite_id);

/// One instance of a suite; throws std::invalid_argument on an unknown id.
TrialOutcome run_trial(const std::string& suite_id, std::uint64_t trial_seed);

SuiteReport run_suite(const std::string& suite_id, int trials, std::uint64_t seed);

}  // namespace caplab
