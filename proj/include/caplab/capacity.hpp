// Capacity optimizers.
//
// compute_ce maximizes the channel mutual information over input states; the
// objective is concave, so every restart should reach the same value.
// compute_one_shot_c1 searches pure-state ensembles for the largest Holevo
// quantity of the outputs; that problem is not concave and the result is only
// ever a lower bound.
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "caplab/channels.hpp"
#include "caplab/entropy.hpp"

namespace caplab {

namespace tol {
inline constexpr double kRestartAgreement = 1e-6;
}

struct OptimizerConfig {
  int restarts = 8;
  int max_iters = 2000;
  double step_tolerance = 1e-9;  // bits
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument unless every field is positive.
  void validate() const;
};

struct CapacityResult {
  double value_bits = 0.0;
  std::variant<DensityMatrix, Ensemble> optimizer_state;
  int iterations = 0;
  int restarts_used = 0;
  bool converged = false;
  double gradient_norm_final = 0.0;
  bool lower_bound_only = false;
  std::vector<double> restart_values;  // one per restart, in restart order

  const DensityMatrix& input_state() const { return std::get<DensityMatrix>(optimizer_state); }
  const Ensemble& ensemble() const { return std::get<Ensemble>(optimizer_state); }
};

/// exp(H) / Tr exp(H) for the Hermitian H packed in `params` (dim^2 reals:
/// the diagonal, then real and imaginary parts of the upper triangle).
DensityMatrix exp_parameterized_state(const RVector& params, int dim);

CapacityResult compute_ce(const QuantumChannel& ch, const OptimizerConfig& cfg = {});
CapacityResult compute_one_shot_c1(const QuantumChannel& ch, const OptimizerConfig& cfg = {});

struct DecompositionReport {
  double input_entropy = 0.0;
  double chi_output = 0.0;
  double chi_environment = 0.0;
  double mutual_information_bits = 0.0;  // input_entropy + chi_output - chi_environment
};

/// Splits the mutual information at the ensemble average into the input
/// entropy and the Holevo quantities of the output and environment ensembles.
DecompositionReport decomposition_report(const QuantumChannel& ch, const Ensemble& pure_ensemble);

struct SweepRow {
  double param = 0.0;
  double ce_bits = 0.0;
};

/// C_E across a grid of one family parameter, sorted by parameter. Other
/// family parameters come from `fixed`.
std::vector<SweepRow> capacity_sweep(const std::string& family, const std::string& key,
                                     std::vector<double> grid, const ParamMap& fixed,
                                     const OptimizerConfig& cfg = {});

/// Sweeps the family's noise parameter (see default_sweep_parameter).
std::vector<SweepRow> capacity_sweep(const std::string& family, std::vector<double> grid,
                                     const OptimizerConfig& cfg = {});

}  // namespace caplab
