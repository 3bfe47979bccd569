// CPTP maps in Kraus form, with Choi and Stinespring views and the channel
// algebra (composition, tensoring, mixing).
#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "caplab/qmat.hpp"

namespace caplab {

namespace tol {
inline constexpr double kTracePreserving = 1e-8;
inline constexpr double kChoiCutoff = 1e-10;
inline constexpr double kChannelAction = 1e-8;
}  // namespace tol

struct CptpReport {
  bool pass = false;
  double deviation = 0.0;  // max-abs entry of sum_k E_k^dag E_k - I
};

/// Checks trace preservation of a raw Kraus family (shapes must agree).
CptpReport validate_cptp(std::span<const CMatrix> kraus, int dim_in);

/// Completely positive, trace-preserving map rho -> sum_k E_k rho E_k^dag.
///
/// Construction rejects families that are not trace preserving within 1e-8;
/// use the raw-family overload of validate_cptp to inspect those.
class QuantumChannel {
 public:
  QuantumChannel(int dim_in, int dim_out, std::vector<CMatrix> kraus, std::string name = {});

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int kraus_rank() const { return static_cast<int>(kraus_.size()); }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  const std::string& name() const { return name_; }

 private:
  int dim_in_;
  int dim_out_;
  std::vector<CMatrix> kraus_;
  std::string name_;
};

CptpReport validate_cptp(const QuantumChannel& ch);

/// Linear action on an arbitrary dim_in x dim_in operator.
CMatrix apply_linear(const QuantumChannel& ch, const CMatrix& x);

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho);

/// (N (x) I)(|phi><phi|) on dim_out x dim_b.
DensityMatrix apply_extended(const QuantumChannel& ch, const PureBipartiteState& state);

/// Isometry V|psi> = sum_k (E_k|psi>) (x) |k>_env, rows indexed out-major.
struct StinespringDilation {
  int dim_in = 0;
  int dim_out = 0;
  int dim_env = 0;
  CMatrix isometry;  // (dim_out * dim_env) x dim_in
};

StinespringDilation dilation(const QuantumChannel& ch);

/// Environment output, entries Tr(E_k rho E_l^dag).
DensityMatrix complementary(const QuantumChannel& ch, const DensityMatrix& rho);

/// second o first, Kraus family {F_j E_k}.
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);
QuantumChannel mix(std::span<const QuantumChannel> channels, std::span<const double> probs);

/// Action equality on the operator basis |i><j|; Kraus lists are gauge dependent
/// and never compared directly.
bool same_action(const QuantumChannel& a, const QuantumChannel& b,
                 double tolerance = tol::kChannelAction);
double action_distance(const QuantumChannel& a, const QuantumChannel& b);

using ParamMap = std::map<std::string, double>;

QuantumChannel identity_channel(int d);
QuantumChannel depolarizing(double p, int d = 2);
QuantumChannel dephasing(double lambda);
QuantumChannel amplitude_damping(double gamma);
/// Output dimension d + 1; index d is the erasure flag.
QuantumChannel erasure(double p, int d = 2);

/// Dispatches on family name: identity, depolarizing, dephasing,
/// amplitude_damping, erasure. Throws std::invalid_argument on an unknown
/// family and std::out_of_range on a bad parameter.
QuantumChannel standard_channel(const std::string& family, const ParamMap& params);

/// Name of the noise parameter swept for a family ("p", "lambda", "gamma").
std::string default_sweep_parameter(const std::string& family);

class ChoiMatrix {
 public:
  /// `state` lives on dim_out (x) dim_in with the output factor slow.
  ChoiMatrix(int dim_in, int dim_out, DensityMatrix state);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const DensityMatrix& state() const { return state_; }

 private:
  int dim_in_;
  int dim_out_;
  DensityMatrix state_;
};

/// (N (x) I)(|Omega><Omega|) with |Omega> = sum_i |ii> / sqrt(d).
ChoiMatrix choi_of(const QuantumChannel& ch);
QuantumChannel kraus_from_choi(const ChoiMatrix& c);

/// Minimal Kraus family via the Choi spectrum (eigenvalues below 1e-10 dropped).
QuantumChannel canonicalize(const QuantumChannel& ch);

}  // namespace caplab
