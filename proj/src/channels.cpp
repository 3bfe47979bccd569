#include "caplab/channels.hpp"

#include <optional>
#include <sstream>

namespace caplab {

namespace {

std::string format_deviation(double dev) {
  std::ostringstream os;
  os << dev;
  return os.str();
}

CMatrix pauli_z() {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

// X^a Z^b on C^d.
CMatrix weyl(int d, int a, int b) {
  const double two_pi = 2.0 * std::acos(-1.0);
  CMatrix w = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    w((j + a) % d, j) = std::polar(1.0, two_pi * b * j / d);
  }
  return w;
}

void require_probability(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::out_of_range(std::string(what) + " must lie in [0, 1], got " + format_deviation(v));
  }
}

int require_dimension(double v, const char* what) {
  if (!(v >= 1.0) || std::floor(v) != v || v > 64.0) {
    throw std::out_of_range(std::string(what) + " must be a positive integer, got " +
                            format_deviation(v));
  }
  return static_cast<int>(v);
}

}  // namespace

CptpReport validate_cptp(std::span<const CMatrix> kraus, int dim_in) {
  CMatrix acc = CMatrix::Zero(dim_in, dim_in);
  for (const auto& e : kraus) {
    if (e.cols() != dim_in) return {false, std::numeric_limits<double>::infinity()};
    if (!all_finite(e)) return {false, std::numeric_limits<double>::infinity()};
    acc += e.adjoint() * e;
  }
  const double dev = max_abs(acc - CMatrix::Identity(dim_in, dim_in));
  return {dev <= tol::kTracePreserving, dev};
}

QuantumChannel::QuantumChannel(int dim_in, int dim_out, std::vector<CMatrix> kraus, std::string name)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), name_(std::move(name)) {
  if (dim_in < 1 || dim_out < 1) throw DimensionError("QuantumChannel: dimensions must be positive");
  if (kraus_.empty()) throw DimensionError("QuantumChannel: Kraus family must be nonempty");
  for (const auto& e : kraus_) {
    if (e.rows() != dim_out || e.cols() != dim_in) {
      throw DimensionError("QuantumChannel: Kraus operator has shape " + std::to_string(e.rows()) +
                           "x" + std::to_string(e.cols()) + ", expected " +
                           std::to_string(dim_out) + "x" + std::to_string(dim_in));
    }
    if (!all_finite(e)) throw ValidationError("QuantumChannel: non-finite Kraus entry");
  }
  const auto report = validate_cptp(kraus_, dim_in);
  if (!report.pass) {
    throw ValidationError("trace preservation violated, deviation " + format_deviation(report.deviation));
  }
}

CptpReport validate_cptp(const QuantumChannel& ch) { return validate_cptp(ch.kraus(), ch.dim_in()); }

CMatrix apply_linear(const QuantumChannel& ch, const CMatrix& x) {
  if (x.rows() != ch.dim_in() || x.cols() != ch.dim_in()) {
    throw DimensionError("apply: operator dimension does not match channel input");
  }
  CMatrix out = CMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& e : ch.kraus()) out.noalias() += e * x * e.adjoint();
  return out;
}

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in()) throw DimensionError("apply: state dimension does not match channel input");
  return DensityMatrix::normalized(apply_linear(ch, rho.matrix()));
}

DensityMatrix apply_extended(const QuantumChannel& ch, const PureBipartiteState& state) {
  if (state.dim_a() != ch.dim_in()) {
    throw DimensionError("apply_extended: system dimension does not match channel input");
  }
  const int da = state.dim_a();
  const int db = state.dim_b();
  const int dout = ch.dim_out();
  CMatrix coeff(da, db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) coeff(a, b) = state.amplitudes()(static_cast<Eigen::Index>(a) * db + b);

  const Eigen::Index n = static_cast<Eigen::Index>(dout) * db;
  CMatrix out = CMatrix::Zero(n, n);
  CVector v(n);
  for (const auto& e : ch.kraus()) {
    const CMatrix ec = e * coeff;
    for (int o = 0; o < dout; ++o)
      for (int b = 0; b < db; ++b) v(static_cast<Eigen::Index>(o) * db + b) = ec(o, b);
    out.noalias() += v * v.adjoint();
  }
  return DensityMatrix::normalized(out);
}

StinespringDilation dilation(const QuantumChannel& ch) {
  const int r = ch.kraus_rank();
  StinespringDilation d{ch.dim_in(), ch.dim_out(), r,
                        CMatrix::Zero(static_cast<Eigen::Index>(ch.dim_out()) * r, ch.dim_in())};
  for (int k = 0; k < r; ++k)
    for (int o = 0; o < ch.dim_out(); ++o)
      d.isometry.row(static_cast<Eigen::Index>(o) * r + k) = ch.kraus()[k].row(o);
  return d;
}

DensityMatrix complementary(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in()) {
    throw DimensionError("complementary: state dimension does not match channel input");
  }
  const int r = ch.kraus_rank();
  CMatrix env(r, r);
  for (int k = 0; k < r; ++k) {
    const CMatrix er = ch.kraus()[k] * rho.matrix();
    for (int l = 0; l < r; ++l) env(k, l) = (er * ch.kraus()[l].adjoint()).trace();
  }
  return DensityMatrix::normalized(env);
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
  if (first.dim_out() != second.dim_in()) {
    throw DimensionError("compose: output of first channel does not match input of second");
  }
  std::vector<CMatrix> kraus;
  kraus.reserve(second.kraus().size() * first.kraus().size());
  for (const auto& f : second.kraus())
    for (const auto& e : first.kraus()) kraus.emplace_back(f * e);
  return QuantumChannel(first.dim_in(), second.dim_out(), std::move(kraus));
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  std::vector<CMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& e : a.kraus())
    for (const auto& f : b.kraus()) kraus.emplace_back(tensor_product(e, f));
  return QuantumChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), std::move(kraus));
}

QuantumChannel mix(std::span<const QuantumChannel> channels, std::span<const double> probs) {
  if (channels.empty() || channels.size() != probs.size()) {
    throw DimensionError("mix: need equal, nonzero numbers of channels and probabilities");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("mix: probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("mix: probabilities must sum to 1");

  const int din = channels.front().dim_in();
  const int dout = channels.front().dim_out();
  std::vector<CMatrix> kraus;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (channels[i].dim_in() != din || channels[i].dim_out() != dout) {
      throw DimensionError("mix: channels must share input and output dimensions");
    }
    if (probs[i] == 0.0) continue;
    for (const auto& e : channels[i].kraus()) kraus.emplace_back(std::sqrt(probs[i]) * e);
  }
  return QuantumChannel(din, dout, std::move(kraus));
}

double action_distance(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    return std::numeric_limits<double>::infinity();
  }
  const int d = a.dim_in();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, j) = 1.0;
      worst = std::max(worst, max_abs(apply_linear(a, e) - apply_linear(b, e)));
    }
  return worst;
}

bool same_action(const QuantumChannel& a, const QuantumChannel& b, double tolerance) {
  return action_distance(a, b) <= tolerance;
}

QuantumChannel identity_channel(int d) {
  if (d < 1) throw std::out_of_range("identity: d must be >= 1");
  return QuantumChannel(d, d, {CMatrix::Identity(d, d)}, "identity");
}

QuantumChannel depolarizing(double p, int d) {
  require_probability(p, "depolarizing: p");
  if (d < 1) throw std::out_of_range("depolarizing: d must be >= 1");
  std::vector<CMatrix> kraus;
  const double dd = static_cast<double>(d) * d;
  kraus.emplace_back(std::sqrt(1.0 - p + p / dd) * CMatrix::Identity(d, d));
  if (p > 0.0) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (a == 0 && b == 0) continue;
        kraus.emplace_back(std::sqrt(p / dd) * weyl(d, a, b));
      }
  }
  return QuantumChannel(d, d, std::move(kraus), "depolarizing");
}

QuantumChannel dephasing(double lambda) {
  require_probability(lambda, "dephasing: lambda");
  std::vector<CMatrix> kraus;
  kraus.emplace_back(std::sqrt(1.0 - lambda / 2.0) * CMatrix::Identity(2, 2));
  if (lambda > 0.0) kraus.emplace_back(std::sqrt(lambda / 2.0) * pauli_z());
  return QuantumChannel(2, 2, std::move(kraus), "dephasing");
}

QuantumChannel amplitude_damping(double gamma) {
  require_probability(gamma, "amplitude_damping: gamma");
  CMatrix e0 = CMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - gamma);
  std::vector<CMatrix> kraus{e0};
  if (gamma > 0.0) {
    CMatrix e1 = CMatrix::Zero(2, 2);
    e1(0, 1) = std::sqrt(gamma);
    kraus.push_back(e1);
  }
  return QuantumChannel(2, 2, std::move(kraus), "amplitude_damping");
}

QuantumChannel erasure(double p, int d) {
  require_probability(p, "erasure: p");
  if (d < 1) throw std::out_of_range("erasure: d must be >= 1");
  std::vector<CMatrix> kraus;
  if (p < 1.0) {
    CMatrix keep = CMatrix::Zero(d + 1, d);
    keep.topRows(d) = std::sqrt(1.0 - p) * CMatrix::Identity(d, d);
    kraus.push_back(keep);
  }
  if (p > 0.0) {
    for (int i = 0; i < d; ++i) {
      CMatrix flag = CMatrix::Zero(d + 1, d);
      flag(d, i) = std::sqrt(p);
      kraus.push_back(flag);
    }
  }
  return QuantumChannel(d, d + 1, std::move(kraus), "erasure");
}

QuantumChannel standard_channel(const std::string& family, const ParamMap& params) {
  auto get = [&](const std::string& key, std::optional<double> fallback) {
    if (auto it = params.find(key); it != params.end()) return it->second;
    if (fallback) return *fallback;
    throw std::out_of_range(family + ": missing parameter '" + key + "'");
  };
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) throw std::out_of_range(family + ": unknown parameter '" + key + "'");
    }
  };

  if (family == "identity") {
    check_keys({"d"});
    return identity_channel(require_dimension(get("d", 2.0), "identity: d"));
  }
  if (family == "depolarizing") {
    check_keys({"p", "d"});
    return depolarizing(get("p", std::nullopt), require_dimension(get("d", 2.0), "depolarizing: d"));
  }
  if (family == "dephasing") {
    check_keys({"lambda"});
    return dephasing(get("lambda", std::nullopt));
  }
  if (family == "amplitude_damping") {
    check_keys({"gamma"});
    return amplitude_damping(get("gamma", std::nullopt));
  }
  if (family == "erasure") {
    check_keys({"p", "d"});
    return erasure(get("p", std::nullopt), require_dimension(get("d", 2.0), "erasure: d"));
  }
  throw std::invalid_argument("unknown channel family '" + family + "'");
}

std::string default_sweep_parameter(const std::string& family) {
  if (family == "depolarizing" || family == "erasure") return "p";
  if (family == "dephasing") return "lambda";
  if (family == "amplitude_damping") return "gamma";
  if (family == "identity") return "d";
  throw std::invalid_argument("unknown channel family '" + family + "'");
}

ChoiMatrix::ChoiMatrix(int dim_in, int dim_out, DensityMatrix state)
    : dim_in_(dim_in), dim_out_(dim_out), state_(std::move(state)) {
  if (state_.dim() != dim_in * dim_out) throw DimensionError("ChoiMatrix: state dimension must be dim_out * dim_in");
  const CMatrix marginal = partial_trace(state_.matrix(), {dim_out, dim_in}, {1});
  const double dev = max_abs(marginal - CMatrix::Identity(dim_in, dim_in) / static_cast<double>(dim_in));
  if (dev > tol::kTracePreserving) {
    throw ValidationError("ChoiMatrix: not trace preserving, deviation " + format_deviation(dev));
  }
}

ChoiMatrix choi_of(const QuantumChannel& ch) {
  const int d = ch.dim_in();
  CVector omega = CVector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) omega(static_cast<Eigen::Index>(i) * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return ChoiMatrix(d, ch.dim_out(), apply_extended(ch, PureBipartiteState(d, d, omega)));
}

QuantumChannel kraus_from_choi(const ChoiMatrix& c) {
  const int din = c.dim_in();
  const int dout = c.dim_out();
  const auto spec = hermitian_spectrum(c.state().matrix());
  std::vector<CMatrix> kraus;
  for (Eigen::Index k = 0; k < spec.values.size(); ++k) {
    const double mu = spec.values(k);
    if (mu < tol::kChoiCutoff) continue;
    const double scale = std::sqrt(mu * din);
    CMatrix e(dout, din);
    for (int o = 0; o < dout; ++o)
      for (int i = 0; i < din; ++i) e(o, i) = scale * spec.vectors(static_cast<Eigen::Index>(o) * din + i, k);
    kraus.push_back(std::move(e));
  }
  return QuantumChannel(din, dout, std::move(kraus));
}

QuantumChannel canonicalize(const QuantumChannel& ch) {
  QuantumChannel out = kraus_from_choi(choi_of(ch));
  return QuantumChannel(out.dim_in(), out.dim_out(), out.kraus(), ch.name());
}

}  // namespace caplab
