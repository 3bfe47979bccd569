// Entropy functionals in bits: von Neumann and relative entropy, entropy
// exchange, channel mutual information, Holevo quantity, coherent information.
#pragma once

#include <span>
#include <vector>

#include "caplab/channels.hpp"
#include "caplab/qmat.hpp"

namespace caplab {

namespace tol {
inline constexpr double kZeroEigenvalue = 1e-12;
inline constexpr double kEntropyClamp = 1e-9;
inline constexpr double kSupportWeight = 1e-10;
inline constexpr double kProbabilitySum = 1e-10;
inline constexpr double kPureMember = 1e-9;
inline constexpr double kExchangeRoutes = 1e-8;
}  // namespace tol

/// Nonnegative entropy in bits, or +infinity for relative entropy across a
/// support violation. Values in [-1e-9, 0) clamp to 0; anything below or NaN
/// throws ValidationError.
class EntropyValue {
 public:
  explicit EntropyValue(double bits);
  static EntropyValue infinite();

  double bits() const { return bits_; }
  bool is_finite() const { return std::isfinite(bits_); }

 private:
  EntropyValue() = default;
  double bits_ = 0.0;
};

/// Probability-weighted family of states of a common dimension.
class Ensemble {
 public:
  Ensemble(std::vector<double> probs, std::vector<DensityMatrix> states);

  std::size_t size() const { return probs_.size(); }
  int dim() const { return states_.front().dim(); }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<DensityMatrix>& states() const { return states_; }

  DensityMatrix average() const;
  bool all_pure(double tolerance = tol::kPureMember) const;

 private:
  std::vector<double> probs_;
  std::vector<DensityMatrix> states_;
};

/// -sum l log2 l over a spectrum, eigenvalues below 1e-12 counted as zero.
double spectrum_entropy(const RVector& eigenvalues);

EntropyValue von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of the reduction of `rho` (on subsystems `dims`) to `keep`.
EntropyValue reduced_entropy(const DensityMatrix& rho, std::span<const int> dims,
                             std::span<const int> keep);
EntropyValue reduced_entropy(const DensityMatrix& rho, std::initializer_list<int> dims,
                             std::initializer_list<int> keep);

/// Tr rho (log2 rho - log2 sigma), evaluated in the sigma eigenbasis.
EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// S((N (x) I)(|phi><phi|)) for the canonical purification of rho.
EntropyValue entropy_exchange(const QuantumChannel& ch, const DensityMatrix& rho);

/// Same quantity through the complementary channel, S(N_c(rho)).
EntropyValue entropy_exchange_complementary(const QuantumChannel& ch, const DensityMatrix& rho);

/// S(rho) + S(N(rho)) - entropy_exchange(N, rho).
EntropyValue mutual_information(const QuantumChannel& ch, const DensityMatrix& rho);

/// S((N (x) I)(phi) || N(rho) (x) rho_B), an independent route to the
/// mutual information.
EntropyValue mutual_information_relative_form(const QuantumChannel& ch, const DensityMatrix& rho);

EntropyValue holevo_chi(const Ensemble& ens);

/// S(N(rho)) - entropy_exchange(N, rho); may be negative.
double coherent_information(const QuantumChannel& ch, const DensityMatrix& rho);

/// sum_i sqrt(p_i) |psi_i>_A |0>_B |i>_D for an ensemble of pure states;
/// the reference factor of the result is B (x) D with dim_b = dim * size.
PureBipartiteState purify_ensemble(const Ensemble& ens);

/// Ensembles {N(rho_i)} and {N_c(rho_i)} with the input weights.
Ensemble push_forward(const QuantumChannel& ch, const Ensemble& ens);
Ensemble push_forward_complementary(const QuantumChannel& ch, const Ensemble& ens);

}  // namespace caplab
