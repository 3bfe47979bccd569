#include "caplab/qmat.hpp"

namespace caplab {

DensityMatrix::DensityMatrix(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionError("DensityMatrix: matrix must be square and nonempty");
  }
  if (!all_finite(m)) throw ValidationError("DensityMatrix: non-finite entry");
  if (const double dev = hermitian_deviation(m); dev > tol::kHermitian) {
    throw ValidationError("DensityMatrix: not Hermitian (deviation " + std::to_string(dev) + ")");
  }
  if (const double tr = m.trace().real(); std::abs(tr - 1.0) > tol::kTrace) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
  }
  m_ = (m + m.adjoint()) / 2.0;

  const RVector values = hermitian_eigenvalues(m_);
  const double smallest = values(values.size() - 1);
  if (smallest < -tol::kNegativeEigenvalue) {
    throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(smallest));
  }
  if (smallest < 0.0) {
    const auto spec = hermitian_spectrum(m_);
    RVector clipped = spec.values.cwiseMax(0.0);
    clipped /= clipped.sum();
    m_ = spec.vectors * clipped.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
    m_ = (m_ + m_.adjoint()) / 2.0;
  }
}

DensityMatrix DensityMatrix::normalized(const CMatrix& m) {
  const Complex tr = m.trace();
  if (!(std::abs(tr) > 0.0)) throw ValidationError("DensityMatrix: zero trace");
  return DensityMatrix(m / tr.real());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw DimensionError("maximally_mixed: dim must be positive");
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw ValidationError("DensityMatrix::pure: zero vector");
  const CVector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw DimensionError("DensityMatrix::basis: index out of range");
  CMatrix m = CMatrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(m);
}

DensityMatrix mix_states(std::span<const DensityMatrix> states, std::span<const double> probs) {
  if (states.empty() || states.size() != probs.size()) {
    throw DimensionError("mix_states: need equal, nonzero numbers of states and weights");
  }
  const int d = states.front().dim();
  CMatrix acc = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != d) throw DimensionError("mix_states: dimension mismatch");
    acc += probs[i] * states[i].matrix();
  }
  return DensityMatrix::normalized(acc);
}

PureBipartiteState::PureBipartiteState(int dim_a, int dim_b, CVector amplitudes)
    : dim_a_(dim_a), dim_b_(dim_b), amps_(std::move(amplitudes)) {
  if (dim_a < 1 || dim_b < 1 || amps_.size() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw DimensionError("PureBipartiteState: amplitude length must equal dim_a * dim_b");
  }
  if (!all_finite(amps_)) throw ValidationError("PureBipartiteState: non-finite amplitude");
  if (const double n2 = amps_.squaredNorm(); std::abs(n2 - 1.0) > tol::kNorm) {
    throw ValidationError("PureBipartiteState: squared norm " + std::to_string(n2) + " is not 1");
  }
}

namespace {

// Amplitudes viewed as a dim_a x dim_b coefficient matrix: psi = sum C(a,b)|a>|b>.
CMatrix coefficients(const CVector& amps, int dim_a, int dim_b) {
  CMatrix c(dim_a, dim_b);
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b) c(a, b) = amps(static_cast<Eigen::Index>(a) * dim_b + b);
  return c;
}

}  // namespace

DensityMatrix PureBipartiteState::reduced_a() const {
  const CMatrix c = coefficients(amps_, dim_a_, dim_b_);
  return DensityMatrix::normalized(c * c.adjoint());
}

DensityMatrix PureBipartiteState::reduced_b() const {
  const CMatrix c = coefficients(amps_, dim_a_, dim_b_);
  return DensityMatrix::normalized((c.adjoint() * c).transpose());
}

PureBipartiteState purify(const DensityMatrix& rho) {
  const int d = rho.dim();
  const auto spec = hermitian_spectrum(rho.matrix());
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    const double w = std::sqrt(std::max(spec.values(i), 0.0));
    for (int a = 0; a < d; ++a) amps(static_cast<Eigen::Index>(a) * d + i) = w * spec.vectors(a, i);
  }
  amps /= amps.norm();
  return PureBipartiteState(d, d, std::move(amps));
}

}  // namespace caplab
