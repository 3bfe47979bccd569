// Dense complex-matrix kernel: tensor products, partial traces, Hermitian
// spectra and purifications.
//
// Index convention everywhere in caplab: row-major lexicographic, the first
// subsystem is the slowest index.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace caplab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ValidationError : std::domain_error {
  using std::domain_error::domain_error;
};

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kNegativeEigenvalue = 1e-8;
inline constexpr double kNorm = 1e-10;
}  // namespace tol

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Kronecker product; the left factor is the slow index.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
tensor_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Out = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Out out = Eigen::kroneckerProduct(a.derived().eval(), b.derived().eval());
  return out;
}

/// Reduced matrix on the subsystems listed in `keep` (ascending order of
/// subsystem index regardless of the order given). Throws DimensionError when
/// the product of `dims` does not match the matrix or `keep` is invalid.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
partial_trace(const Eigen::MatrixBase<Derived>& m, std::span<const int> dims,
              std::span<const int> keep) {
  using Scalar = typename Derived::Scalar;
  using Out = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const int n = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionError("partial_trace: subsystem dimensions must be positive");
    total *= d;
  }
  if (m.rows() != m.cols() || m.rows() != total) {
    throw DimensionError("partial_trace: product of subsystem dimensions (" +
                         std::to_string(total) + ") does not match matrix size " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (keep.empty()) throw DimensionError("partial_trace: keep must be nonempty");

  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n || kept[k]) throw DimensionError("partial_trace: invalid keep index");
    kept[k] = true;
  }

  // Strides of each subsystem in the full index.
  std::vector<long> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  std::vector<int> kept_sys, traced_sys;
  for (int s = 0; s < n; ++s) (kept[s] ? kept_sys : traced_sys).push_back(s);

  // Offset in the full index for every multi-index of a group of subsystems.
  auto offsets = [&](const std::vector<int>& group) {
    std::vector<long> off{0};
    for (int s : group) {
      std::vector<long> next;
      next.reserve(off.size() * dims[s]);
      for (long o : off)
        for (int v = 0; v < dims[s]; ++v) next.push_back(o + v * stride[s]);
      off = std::move(next);
    }
    return off;
  };
  const std::vector<long> kept_off = offsets(kept_sys);
  const std::vector<long> traced_off = offsets(traced_sys);

  const auto dk = static_cast<Eigen::Index>(kept_off.size());
  Out out = Out::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      Scalar acc(0);
      for (long t : traced_off) acc += m(kept_off[r] + t, kept_off[c] + t);
      out(r, c) = acc;
    }
  return out;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
partial_trace(const Eigen::MatrixBase<Derived>& m, std::initializer_list<int> dims,
              std::initializer_list<int> keep) {
  return partial_trace(m, std::span<const int>(dims.begin(), dims.size()),
                       std::span<const int>(keep.begin(), keep.size()));
}

template <typename Scalar>
struct HermitianSpectrum {
  RVector values;  // descending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns match values
};

template <typename Derived>
double hermitian_deviation(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

template <typename Derived>
HermitianSpectrum<typename Derived::Scalar> hermitian_spectrum(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols()) throw DimensionError("hermitian_spectrum: matrix is not square");
  if (const double dev = hermitian_deviation(m); !(dev <= tol::kHermitian)) {
    throw ValidationError("hermitian_spectrum: matrix is not Hermitian (deviation " +
                          std::to_string(dev) + ")");
  }
  const Mat sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  const Eigen::Index n = sym.rows();
  HermitianSpectrum<Scalar> out{RVector(n), Mat(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

/// Eigenvalues only (descending); skips the eigenvector computation.
template <typename Derived>
RVector hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Mat sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  RVector v = es.eigenvalues().reverse();
  return v;
}

/// Positive semidefinite, unit-trace Hermitian matrix.
///
/// Construction symmetrizes the input, clips eigenvalues in [-1e-8, 0) to zero
/// and renormalizes. Anything further from a state throws ValidationError.
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMatrix& m);

  /// Divides by the trace before validating. For outputs of maps that are
  /// trace preserving only up to tolerance.
  static DensityMatrix normalized(const CMatrix& m);
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix basis(int dim, int index);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

 private:
  CMatrix m_;
};

DensityMatrix mix_states(std::span<const DensityMatrix> states, std::span<const double> probs);

/// Unit vector on A (x) B with A the slow index.
class PureBipartiteState {
 public:
  PureBipartiteState(int dim_a, int dim_b, CVector amplitudes);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const CVector& amplitudes() const { return amps_; }

  CMatrix projector() const { return amps_ * amps_.adjoint(); }
  DensityMatrix reduced_a() const;
  DensityMatrix reduced_b() const;

 private:
  int dim_a_;
  int dim_b_;
  CVector amps_;
};

/// Canonical purification sum_i sqrt(l_i) |e_i>_A |i>_B, eigenvalues
/// descending, reference dimension equal to rho.dim().
PureBipartiteState purify(const DensityMatrix& rho);

}  // namespace caplab
