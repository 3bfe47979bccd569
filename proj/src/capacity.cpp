#include "caplab/capacity.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "optimize.hpp"
#include "parallel.hpp"

namespace caplab {

void OptimizerConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts must be positive");
  if (max_iters < 1) throw std::invalid_argument("OptimizerConfig: max_iters must be positive");
  if (!(step_tolerance > 0.0)) throw std::invalid_argument("OptimizerConfig: step_tolerance must be positive");
}

DensityMatrix exp_parameterized_state(const RVector& params, int dim) {
  if (params.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw DimensionError("exp_parameterized_state: expected dim^2 parameters");
  }
  CMatrix h = CMatrix::Zero(dim, dim);
  Eigen::Index k = 0;
  for (int i = 0; i < dim; ++i) h(i, i) = params(k++);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = Complex(params(k), params(k + 1));
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector& ev = es.eigenvalues();
  RVector w = (ev.array() - ev.maxCoeff()).exp();
  w /= w.sum();
  CMatrix rho = es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix(rho);
}

namespace {

detail::MaximizeOptions maximize_options(const OptimizerConfig& cfg) {
  detail::MaximizeOptions opt;
  opt.max_iters = cfg.max_iters;
  opt.step_tolerance = cfg.step_tolerance;
  return opt;
}

RVector gaussian_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RVector v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

struct EnsembleLayout {
  int dim;
  int members;
  Eigen::Index size() const { return static_cast<Eigen::Index>(members) * (2 * dim + 1); }
};

// Normalized pure states from (re, im) blocks, probabilities from squared
// weights stored after the state blocks.
std::optional<Ensemble> unpack_ensemble(const RVector& x, const EnsembleLayout& layout) {
  const int d = layout.dim;
  const int m = layout.members;
  const Eigen::Index weight_base = static_cast<Eigen::Index>(m) * 2 * d;
  double weight_total = 0.0;
  for (int i = 0; i < m; ++i) weight_total += x(weight_base + i) * x(weight_base + i);
  if (!(weight_total > 1e-300)) return std::nullopt;

  std::vector<double> probs;
  std::vector<DensityMatrix> states;
  probs.reserve(m);
  states.reserve(m);
  for (int i = 0; i < m; ++i) {
    CVector psi(d);
    for (int a = 0; a < d; ++a) {
      const Eigen::Index base = (static_cast<Eigen::Index>(i) * d + a) * 2;
      psi(a) = Complex(x(base), x(base + 1));
    }
    if (!(psi.norm() > 1e-150)) return std::nullopt;
    states.push_back(DensityMatrix::pure(psi));
    probs.push_back(x(weight_base + i) * x(weight_base + i) / weight_total);
  }
  // Absorb rounding so the weights sum to one exactly enough for Ensemble.
  double s = 0.0;
  for (double p : probs) s += p;
  for (double& p : probs) p /= s;
  return Ensemble(std::move(probs), std::move(states));
}

template <typename Objective>
std::vector<detail::MaximizeResult> run_restarts(const Objective& objective, Eigen::Index n_params,
                                                 const OptimizerConfig& cfg) {
  std::vector<detail::MaximizeResult> runs(cfg.restarts);
  const auto opt = maximize_options(cfg);
  for (int r = 0; r < cfg.restarts; ++r) {
    runs[r] = detail::maximize(objective, gaussian_vector(n_params, cfg.seed + static_cast<std::uint64_t>(r)), opt);
  }
  return runs;
}

std::size_t best_run(const std::vector<detail::MaximizeResult>& runs) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].value > runs[best].value) best = r;
  return best;
}

}  // namespace

CapacityResult compute_ce(const QuantumChannel& ch, const OptimizerConfig& cfg) {
  cfg.validate();
  const int d = ch.dim_in();
  const detail::Objective objective = [&](const RVector& x) {
    return mutual_information(ch, exp_parameterized_state(x, d)).bits();
  };
  const auto runs = run_restarts(objective, static_cast<Eigen::Index>(d) * d, cfg);
  const std::size_t best = best_run(runs);

  DensityMatrix state = exp_parameterized_state(runs[best].x, d);
  CapacityResult res{.value_bits = mutual_information(ch, state).bits(), .optimizer_state = std::move(state), .restart_values = {}};
  res.iterations = runs[best].iterations;
  res.restarts_used = cfg.restarts;
  res.gradient_norm_final = runs[best].gradient_norm;
  double lo = runs[best].value;
  bool all_converged = true;
  for (const auto& run : runs) {
    res.restart_values.push_back(run.value);
    lo = std::min(lo, run.value);
    all_converged = all_converged && run.converged;
  }
  res.converged = all_converged && runs[best].value - lo <= tol::kRestartAgreement;
  return res;
}

CapacityResult compute_one_shot_c1(const QuantumChannel& ch, const OptimizerConfig& cfg) {
  cfg.validate();
  const EnsembleLayout layout{ch.dim_in(), ch.dim_in() * ch.dim_in()};
  const detail::Objective objective = [&](const RVector& x) {
    const auto ens = unpack_ensemble(x, layout);
    if (!ens) return -std::numeric_limits<double>::infinity();
    return holevo_chi(push_forward(ch, *ens)).bits();
  };
  const auto runs = run_restarts(objective, layout.size(), cfg);
  const std::size_t best = best_run(runs);

  Ensemble ens = *unpack_ensemble(runs[best].x, layout);
  const double value = holevo_chi(push_forward(ch, ens)).bits();
  CapacityResult res{.value_bits = value, .optimizer_state = std::move(ens), .restart_values = {}};
  res.iterations = runs[best].iterations;
  res.restarts_used = cfg.restarts;
  res.gradient_norm_final = runs[best].gradient_norm;
  res.converged = runs[best].converged;
  res.lower_bound_only = true;
  for (const auto& run : runs) res.restart_values.push_back(run.value);
  return res;
}

DecompositionReport decomposition_report(const QuantumChannel& ch, const Ensemble& pure_ensemble) {
  if (pure_ensemble.dim() != ch.dim_in()) throw DimensionError("decomposition_report: dimension mismatch");
  if (!pure_ensemble.all_pure()) throw ValidationError("decomposition_report: ensemble member is not pure");
  DecompositionReport r;
  r.input_entropy = von_neumann_entropy(pure_ensemble.average()).bits();
  r.chi_output = holevo_chi(push_forward(ch, pure_ensemble)).bits();
  r.chi_environment = holevo_chi(push_forward_complementary(ch, pure_ensemble)).bits();
  r.mutual_information_bits = r.input_entropy + r.chi_output - r.chi_environment;
  return r;
}

std::vector<SweepRow> capacity_sweep(const std::string& family, const std::string& key,
                                     std::vector<double> grid, const ParamMap& fixed,
                                     const OptimizerConfig& cfg) {
  cfg.validate();
  std::sort(grid.begin(), grid.end());
  // Build every channel first so parameter errors surface before any work.
  std::vector<QuantumChannel> channels;
  channels.reserve(grid.size());
  for (double v : grid) {
    ParamMap params = fixed;
    params[key] = v;
    channels.push_back(standard_channel(family, params));
  }
  std::vector<SweepRow> rows(grid.size());
  detail::parallel_for(grid.size(), [&](std::size_t i) {
    rows[i] = {grid[i], compute_ce(channels[i], cfg).value_bits};
  });
  return rows;
}

std::vector<SweepRow> capacity_sweep(const std::string& family, std::vector<double> grid,
                                     const OptimizerConfig& cfg) {
  return capacity_sweep(family, default_sweep_parameter(family), std::move(grid), {}, cfg);
}

}  // namespace caplab
