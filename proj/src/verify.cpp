#include "caplab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

#include "caplab/capacity.hpp"
#include "parallel.hpp"

namespace caplab {

namespace {

CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  return g;
}

// Orthonormal columns with the phase convention that makes QR Haar-distributed.
CMatrix orthonormal_columns(const CMatrix& g) {
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(g.rows(), g.cols());
  const CMatrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

// Sub-seeds for the random objects of one trial.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t trial_seed) : rng_(trial_seed) {}
  std::uint64_t next() { return rng_(); }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

 private:
  std::mt19937_64 rng_;
};

OptimizerConfig suite_config(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.restarts = 2;
  cfg.seed = seed;
  return cfg;
}

double ce(const QuantumChannel& ch, std::uint64_t seed) { return compute_ce(ch, suite_config(seed)).value_bits; }

QuantumChannel random_qubit_channel(SeedStream& s, Witness& w, const std::string& tag) {
  const int rank = s.pick(1, 4);
  w.params["rank" + tag] = rank;
  return random_channel(2, 2, rank, s.next());
}

TrialOutcome trial_dp(std::uint64_t seed) {
  SeedStream s(seed);
  TrialOutcome out{0.0, {seed, {}}};
  const auto n1 = random_qubit_channel(s, out.witness, "1");
  const auto n2 = random_qubit_channel(s, out.witness, "2");
  const double c1 = ce(n1, seed);
  const double c2 = ce(n2, seed);
  const double c21 = ce(compose(n2, n1), seed);
  out.margin = std::min(c1, c2) - c21;
  return out;
}

TrialOutcome trial_convexity(std::uint64_t seed) {
  SeedStream s(seed);
  TrialOutcome out{0.0, {seed, {}}};
  const auto n1 = random_qubit_channel(s, out.witness, "1");
  const auto n2 = random_qubit_channel(s, out.witness, "2");
  const double lambda = s.uniform();
  out.witness.params["lambda"] = lambda;
  const std::vector<QuantumChannel> members{n1, n2};
  const std::vector<double> probs{lambda, 1.0 - lambda};
  out.margin = lambda * ce(n1, seed) + (1.0 - lambda) * ce(n2, seed) - ce(mix(members, probs), seed);
  return out;
}

TrialOutcome trial_additivity(std::uint64_t seed) {
  SeedStream s(seed);
  TrialOutcome out{0.0, {seed, {}}};
  const auto n1 = random_qubit_channel(s, out.witness, "1");
  const auto n2 = random_qubit_channel(s, out.witness, "2");
  out.margin = -std::abs(ce(tensor(n1, n2), seed) - ce(n1, seed) - ce(n2, seed));
  return out;
}

TrialOutcome trial_ssa(std::uint64_t seed) {
  const CVector psi = random_pure_vector(16, seed);
  const DensityMatrix abcd = DensityMatrix::pure(psi);
  const DensityMatrix abc(partial_trace(abcd.matrix(), {2, 2, 2, 2}, {0, 1, 2}));
  const double s_abc = von_neumann_entropy(abc).bits();
  const double s_ab = reduced_entropy(abc, {2, 2, 2}, {0, 1}).bits();
  const double s_bc = reduced_entropy(abc, {2, 2, 2}, {1, 2}).bits();
  const double s_b = reduced_entropy(abc, {2, 2, 2}, {1}).bits();
  return {s_ab + s_bc - s_abc - s_b, {seed, {{"qubits", 4}}}};
}

TrialOutcome trial_jsa(std::uint64_t seed) {
  const DensityMatrix abcd = random_density(16, seed);
  const double s_abcd = von_neumann_entropy(abcd).bits();
  const double s_c = reduced_entropy(abcd, {2, 2, 2, 2}, {2}).bits();
  const double s_d = reduced_entropy(abcd, {2, 2, 2, 2}, {3}).bits();
  const double s_ac = reduced_entropy(abcd, {2, 2, 2, 2}, {0, 2}).bits();
  const double s_bd = reduced_entropy(abcd, {2, 2, 2, 2}, {1, 3}).bits();
  const double s_cd = reduced_entropy(abcd, {2, 2, 2, 2}, {2, 3}).bits();
  return {s_ac + s_bd + s_cd - s_abcd - s_c - s_d, {seed, {{"qubits", 4}}}};
}

TrialOutcome trial_monotonicity(std::uint64_t seed) {
  SeedStream s(seed);
  const int din = s.pick(2, 4);
  const int dout = s.pick(2, 4);
  const int rank = s.pick((din + dout - 1) / dout, 4);
  TrialOutcome out{0.0, {seed, {{"dim_in", din}, {"dim_out", dout}, {"rank", rank}}}};
  const auto ch = random_channel(din, dout, rank, s.next());
  const auto rho = random_density(din, s.next());
  const auto sigma = random_density(din, s.next());
  const EntropyValue before = relative_entropy(rho, sigma);
  if (!before.is_finite()) {
    out.margin = std::numeric_limits<double>::infinity();
    return out;
  }
  out.margin = before.bits() - relative_entropy(apply(ch, rho), apply(ch, sigma)).bits();
  return out;
}

TrialOutcome trial_exchange_bound(std::uint64_t seed) {
  SeedStream s(seed);
  const int din = s.pick(2, 3);
  const int dout = s.pick(2, 3);
  const int rank = s.pick(1, 4);
  const int members = s.pick(2, 4);
  TrialOutcome out{0.0, {seed, {{"dim_in", din}, {"dim_out", dout}, {"rank", rank}, {"members", members}}}};
  const auto ch = random_channel(din, dout, std::max(rank, (din + dout - 1) / dout), s.next());
  const auto ens = random_pure_ensemble(din, members, s.next());
  double avg_output_entropy = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    avg_output_entropy += ens.probs()[i] * von_neumann_entropy(apply(ch, ens.states()[i])).bits();
  }
  out.margin = entropy_exchange(ch, ens.average()).bits() - avg_output_entropy;
  return out;
}

TrialOutcome trial_concavity(std::uint64_t seed) {
  SeedStream s(seed);
  const int din = s.pick(2, 3);
  const int dout = s.pick(2, 3);
  const int rank = std::max(s.pick(1, 4), (din + dout - 1) / dout);
  const double lambda = s.uniform();
  TrialOutcome out{0.0, {seed, {{"dim_in", din}, {"dim_out", dout}, {"rank", rank}, {"lambda", lambda}}}};
  const auto ch = random_channel(din, dout, rank, s.next());
  const auto rho1 = random_density(din, s.next());
  const auto rho2 = random_density(din, s.next());
  const DensityMatrix mixed(lambda * rho1.matrix() + (1.0 - lambda) * rho2.matrix());
  out.margin = mutual_information(ch, mixed).bits() - lambda * mutual_information(ch, rho1).bits() -
               (1.0 - lambda) * mutual_information(ch, rho2).bits();
  return out;
}

TrialOutcome trial_decomp(std::uint64_t seed) {
  SeedStream s(seed);
  const int din = s.pick(2, 3);
  const int dout = s.pick(2, 3);
  const int rank = std::max(s.pick(1, 4), (din + dout - 1) / dout);
  const int size1 = s.pick(din, 2 * din);
  const int size2 = s.pick(din, 2 * din);
  TrialOutcome out{0.0,
                   {seed, {{"dim_in", din}, {"dim_out", dout}, {"rank", rank}, {"size1", size1}, {"size2", size2}}}};
  const auto ch = random_channel(din, dout, rank, s.next());
  const auto rho = random_density(din, s.next());
  const auto r1 = decomposition_report(ch, random_decomposition(rho, size1, s.next()));
  const auto r2 = decomposition_report(ch, random_decomposition(rho, size2, s.next()));
  const double mi = mutual_information(ch, rho).bits();
  const double diff_gap = std::abs((r1.chi_output - r1.chi_environment) - (r2.chi_output - r2.chi_environment));
  out.margin = -std::max({diff_gap, std::abs(r1.mutual_information_bits - mi),
                          std::abs(r2.mutual_information_bits - mi)});
  return out;
}

TrialOutcome trial_bound(std::uint64_t seed) {
  SeedStream s(seed);
  TrialOutcome out{0.0, {seed, {}}};
  const auto ch = random_qubit_channel(s, out.witness, "");
  const double c_e = ce(ch, seed);
  OptimizerConfig c1_cfg = suite_config(seed);
  c1_cfg.restarts = 3;
  const double c_1 = compute_one_shot_c1(ch, c1_cfg).value_bits;
  out.margin = std::min(c_e - c_1, std::log2(ch.dim_in()) + c_1 - c_e);
  return out;
}

TrialOutcome trial_eq3(std::uint64_t seed) {
  SeedStream s(seed);
  const int din = s.pick(2, 3);
  const int dout = s.pick(2, 3);
  const int rank = std::max(s.pick(1, 4), (din + dout - 1) / dout);
  TrialOutcome out{0.0, {seed, {{"dim_in", din}, {"dim_out", dout}, {"rank", rank}}}};
  const auto ch = random_channel(din, dout, rank, s.next());
  const auto rho = random_density(din, s.next());
  out.margin = -std::abs(mutual_information(ch, rho).bits() - mutual_information_relative_form(ch, rho).bits());
  return out;
}

}  // namespace

CVector random_pure_vector(int dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("random_pure_vector: dim must be positive");
  CVector v = gaussian_matrix(dim, 1, seed).col(0);
  return v / v.norm();
}

DensityMatrix random_density(int dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("random_density: dim must be positive");
  const CVector psi = random_pure_vector(dim * dim, seed);
  CMatrix coeff(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) coeff(a, b) = psi(static_cast<Eigen::Index>(a) * dim + b);
  return DensityMatrix::normalized(coeff * coeff.adjoint());
}

CMatrix random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("random_unitary: dim must be positive");
  return orthonormal_columns(gaussian_matrix(dim, dim, seed));
}

QuantumChannel random_channel(int dim_in, int dim_out, int kraus_rank, std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1 || kraus_rank < 1) {
    throw DimensionError("random_channel: dimensions and Kraus rank must be positive");
  }
  if (dim_out * kraus_rank < dim_in) {
    throw DimensionError("random_channel: dim_out * kraus_rank must be at least dim_in");
  }
  const CMatrix v = orthonormal_columns(gaussian_matrix(static_cast<Eigen::Index>(dim_out) * kraus_rank, dim_in, seed));
  std::vector<CMatrix> kraus(kraus_rank, CMatrix(dim_out, dim_in));
  for (int k = 0; k < kraus_rank; ++k)
    for (int o = 0; o < dim_out; ++o) kraus[k].row(o) = v.row(static_cast<Eigen::Index>(o) * kraus_rank + k);
  return QuantumChannel(dim_in, dim_out, std::move(kraus), "random");
}

Ensemble random_pure_ensemble(int dim, int size, std::uint64_t seed) {
  if (size < 1) throw DimensionError("random_pure_ensemble: size must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> probs(size);
  std::vector<DensityMatrix> states;
  std::exponential_distribution<double> expo(1.0);
  double total = 0.0;
  for (auto& p : probs) total += (p = expo(rng));
  for (auto& p : probs) p /= total;
  for (int i = 0; i < size; ++i) states.push_back(DensityMatrix::pure(random_pure_vector(dim, rng())));
  return Ensemble(std::move(probs), std::move(states));
}

Ensemble random_decomposition(const DensityMatrix& rho, int size, std::uint64_t seed) {
  const int d = rho.dim();
  if (size < d) throw DimensionError("random_decomposition: size must be at least the dimension");
  const auto spec = hermitian_spectrum(rho.matrix());
  const CMatrix u = random_unitary(size, seed);

  std::vector<double> probs(size, 0.0);
  std::vector<DensityMatrix> states;
  states.reserve(size);
  double total = 0.0;
  for (int i = 0; i < size; ++i) {
    CVector w = CVector::Zero(d);
    for (int j = 0; j < d; ++j) w += u(i, j) * std::sqrt(std::max(spec.values(j), 0.0)) * spec.vectors.col(j);
    const double n2 = w.squaredNorm();
    if (n2 > 1e-300) {
      probs[i] = n2;
      states.push_back(DensityMatrix::pure(w));
    } else {
      states.push_back(DensityMatrix::basis(d, 0));
    }
    total += probs[i];
  }
  for (auto& p : probs) p /= total;
  return Ensemble(std::move(probs), std::move(states));
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{"dp",           "convexity",      "additivity", "ssa",
                                            "jsa",          "monotonicity",   "exchange-bound",
                                            "concavity",    "decomp",         "bound",      "eq3"};
  return ids;
}

bool is_capacity_suite(const std::string& suite_id) {
  return suite_id == "dp" || suite_id == "convexity" || suite_id == "additivity" || suite_id == "bound";
}

double suite_tolerance(const std::string& suite_id) {
  if (std::find(suite_ids().begin(), suite_ids().end(), suite_id) == suite_ids().end()) {
    throw std::invalid_argument("unknown suite '" + suite_id + "'");
  }
  if (is_capacity_suite(suite_id)) return 1e-3;
  // Equalities between two computation routes.
  if (suite_id == "eq3" || suite_id == "decomp") return 1e-8;
  return 1e-9;
}

TrialOutcome run_trial(const std::string& suite_id, std::uint64_t trial_seed) {
  if (suite_id == "dp") return trial_dp(trial_seed);
  if (suite_id == "convexity") return trial_convexity(trial_seed);
  if (suite_id == "additivity") return trial_additivity(trial_seed);
  if (suite_id == "ssa") return trial_ssa(trial_seed);
  if (suite_id == "jsa") return trial_jsa(trial_seed);
  if (suite_id == "monotonicity") return trial_monotonicity(trial_seed);
  if (suite_id == "exchange-bound") return trial_exchange_bound(trial_seed);
  if (suite_id == "concavity") return trial_concavity(trial_seed);
  if (suite_id == "decomp") return trial_decomp(trial_seed);
  if (suite_id == "bound") return trial_bound(trial_seed);
  if (suite_id == "eq3") return trial_eq3(trial_seed);
  throw std::invalid_argument("unknown suite '" + suite_id + "'");
}

SuiteReport run_suite(const std::string& suite_id, int trials, std::uint64_t seed) {
  const double tolerance = suite_tolerance(suite_id);
  if (trials < 1) throw std::invalid_argument("run_suite: trials must be positive");
  const auto start = std::chrono::steady_clock::now();

  std::vector<TrialOutcome> outcomes(trials);
  detail::parallel_for(outcomes.size(), [&](std::size_t i) {
    outcomes[i] = run_trial(suite_id, seed + i);
  });

  SuiteReport report;
  report.suite_id = suite_id;
  report.trials = trials;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const double m = outcomes[i].margin;
    if (!(m >= -tolerance)) ++report.failures;
    if (std::isnan(m) || (!std::isnan(outcomes[worst].margin) && m < outcomes[worst].margin)) worst = i;
  }
  report.worst_slack_bits = outcomes[worst].margin;
  report.worst_witness = outcomes[worst].witness;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace caplab
