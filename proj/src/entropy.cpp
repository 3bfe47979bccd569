#include "caplab/entropy.hpp"

#include <cassert>

namespace caplab {

EntropyValue::EntropyValue(double bits) : bits_(bits) {
  if (std::isnan(bits)) throw ValidationError("EntropyValue: NaN");
  if (bits < -tol::kEntropyClamp) {
    throw ValidationError("EntropyValue: negative entropy " + std::to_string(bits));
  }
  if (bits < 0.0) bits_ = 0.0;
}

EntropyValue EntropyValue::infinite() {
  EntropyValue v;
  v.bits_ = std::numeric_limits<double>::infinity();
  return v;
}

Ensemble::Ensemble(std::vector<double> probs, std::vector<DensityMatrix> states)
    : probs_(std::move(probs)), states_(std::move(states)) {
  if (probs_.empty() || probs_.size() != states_.size()) {
    throw DimensionError("Ensemble: need equal, nonzero numbers of weights and states");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw ValidationError("Ensemble: negative or NaN probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kProbabilitySum) {
    throw ValidationError("Ensemble: probabilities sum to " + std::to_string(total));
  }
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) throw DimensionError("Ensemble: states differ in dimension");
  }
}

DensityMatrix Ensemble::average() const { return mix_states(states_, probs_); }

bool Ensemble::all_pure(double tolerance) const {
  for (const auto& s : states_) {
    if (hermitian_eigenvalues(s.matrix())(0) < 1.0 - tolerance) return false;
  }
  return true;
}

double spectrum_entropy(const RVector& eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l > tol::kZeroEigenvalue) s -= l * std::log2(l);
  }
  return s;
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
  return EntropyValue(spectrum_entropy(hermitian_eigenvalues(rho.matrix())));
}

EntropyValue reduced_entropy(const DensityMatrix& rho, std::span<const int> dims,
                             std::span<const int> keep) {
  return EntropyValue(spectrum_entropy(hermitian_eigenvalues(partial_trace(rho.matrix(), dims, keep))));
}

EntropyValue reduced_entropy(const DensityMatrix& rho, std::initializer_list<int> dims,
                             std::initializer_list<int> keep) {
  return reduced_entropy(rho, std::span<const int>(dims.begin(), dims.size()),
                         std::span<const int>(keep.begin(), keep.size()));
}

EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative_entropy: dimension mismatch");
  const auto sig = hermitian_spectrum(sigma.matrix());
  double cross = 0.0;  // Tr rho log2 sigma
  for (Eigen::Index j = 0; j < sig.values.size(); ++j) {
    const double weight = sig.vectors.col(j).dot(rho.matrix() * sig.vectors.col(j)).real();
    if (sig.values(j) < tol::kZeroEigenvalue) {
      if (weight > tol::kSupportWeight) return EntropyValue::infinite();
      continue;
    }
    cross += weight * std::log2(sig.values(j));
  }
  const double neg_entropy = -spectrum_entropy(hermitian_eigenvalues(rho.matrix()));
  return EntropyValue(neg_entropy - cross);
}

EntropyValue entropy_exchange_complementary(const QuantumChannel& ch, const DensityMatrix& rho) {
  return von_neumann_entropy(complementary(ch, rho));
}

EntropyValue entropy_exchange(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in()) throw DimensionError("entropy_exchange: dimension mismatch");
  const EntropyValue s = von_neumann_entropy(apply_extended(ch, purify(rho)));
  assert(std::abs(s.bits() - entropy_exchange_complementary(ch, rho).bits()) <= tol::kExchangeRoutes);
  return s;
}

EntropyValue mutual_information(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in()) throw DimensionError("mutual_information: dimension mismatch");
  return EntropyValue(von_neumann_entropy(rho).bits() + von_neumann_entropy(apply(ch, rho)).bits() -
                      entropy_exchange(ch, rho).bits());
}

EntropyValue mutual_information_relative_form(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in()) throw DimensionError("mutual_information: dimension mismatch");
  const PureBipartiteState phi = purify(rho);
  const DensityMatrix joint = apply_extended(ch, phi);
  const DensityMatrix product(tensor_product(apply(ch, rho).matrix(), phi.reduced_b().matrix()));
  return relative_entropy(joint, product);
}

EntropyValue holevo_chi(const Ensemble& ens) {
  double avg_entropy = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (ens.probs()[i] > 0.0) avg_entropy += ens.probs()[i] * von_neumann_entropy(ens.states()[i]).bits();
  }
  return EntropyValue(von_neumann_entropy(ens.average()).bits() - avg_entropy);
}

double coherent_information(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in()) throw DimensionError("coherent_information: dimension mismatch");
  return von_neumann_entropy(apply(ch, rho)).bits() - entropy_exchange(ch, rho).bits();
}

PureBipartiteState purify_ensemble(const Ensemble& ens) {
  if (!ens.all_pure()) throw ValidationError("purify_ensemble: ensemble member is not pure");
  const int d = ens.dim();
  const auto m = static_cast<Eigen::Index>(ens.size());
  const Eigen::Index db = d * m;  // B (x) D, D fastest
  CVector amps = CVector::Zero(d * db);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto spec = hermitian_spectrum(ens.states()[i].matrix());
    const double w = std::sqrt(ens.probs()[i]);
    for (int a = 0; a < d; ++a) amps(a * db + i) = w * spec.vectors(a, 0);
  }
  amps /= amps.norm();
  return PureBipartiteState(d, static_cast<int>(db), std::move(amps));
}

Ensemble push_forward(const QuantumChannel& ch, const Ensemble& ens) {
  std::vector<DensityMatrix> out;
  out.reserve(ens.size());
  for (const auto& s : ens.states()) out.push_back(apply(ch, s));
  return Ensemble(ens.probs(), std::move(out));
}

Ensemble push_forward_complementary(const QuantumChannel& ch, const Ensemble& ens) {
  std::vector<DensityMatrix> out;
  out.reserve(ens.size());
  for (const auto& s : ens.states()) out.push_back(complementary(ch, s));
  return Ensemble(ens.probs(), std::move(out));
}

}  // namespace caplab
