// caplab: capacities of finite-dimensional quantum channels and the
// inequality suites, from the command line.
//
// Exit codes: 0 success, 1 a verification suite reported failures,
// 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "caplab/capacity.hpp"
#include "caplab/channels.hpp"
#include "caplab/entropy.hpp"
#include "caplab/spec_io.hpp"
#include "caplab/verify.hpp"

namespace {

using namespace caplab;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitInputError = 2;

struct ChannelSource {
  std::string file;
  std::string builtin;
  std::string params;
};

void add_channel_options(CLI::App* cmd, ChannelSource& src) {
  auto* file = cmd->add_option("--channel", src.file, "Channel spec file (JSON)");
  auto* builtin = cmd->add_option("--builtin", src.builtin, "Builtin channel family");
  cmd->add_option("--params", src.params, "Family parameters, K=V,...");
  file->excludes(builtin);
}

QuantumChannel load_channel(const ChannelSource& src) {
  if (!src.file.empty()) return parse_channel_spec(read_file(src.file));
  if (src.builtin.empty()) throw SpecError("one of --channel or --builtin is required");
  try {
    return standard_channel(src.builtin, parse_param_list(src.params));
  } catch (const std::out_of_range& e) {
    throw SpecError(std::string("parameter out of range: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("cannot write '" + path + "'");
  out << content;
  if (!out) throw SpecError("failed writing '" + path + "'");
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw SpecError("--range expects START,END,COUNT");
  double start = 0.0, end = 0.0;
  long count = 0;
  try {
    start = std::stod(parts[0]);
    end = std::stod(parts[1]);
    count = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw SpecError("--range expects START,END,COUNT");
  }
  if (count < 1) throw SpecError("--range COUNT must be positive");
  std::vector<double> grid;
  for (long i = 0; i < count; ++i) {
    grid.push_back(count == 1 ? start : start + (end - start) * static_cast<double>(i) / (count - 1));
  }
  return grid;
}

int run_compute(const ChannelSource& src, const std::string& quantity, const std::string& state_file,
                const OptimizerConfig& cfg) {
  const QuantumChannel ch = load_channel(src);
  if (quantity == "ce") {
    const auto res = compute_ce(ch, cfg);
    std::cout << "C_E = " << format_bits(res.value_bits) << "\n";
    if (!res.converged) std::cerr << "warning: optimizer restarts did not agree within 1e-6 bits\n";
    return kExitOk;
  }
  if (quantity == "c1") {
    const auto res = compute_one_shot_c1(ch, cfg);
    std::cout << "C_1 = " << format_bits(res.value_bits) << " (lower bound)\n";
    return kExitOk;
  }
  if (state_file.empty()) throw SpecError("--quantity " + quantity + " requires --input-state");
  const DensityMatrix rho = parse_density_matrix(read_file(state_file));
  if (rho.dim() != ch.dim_in()) throw SpecError("input state dimension does not match channel input");
  if (quantity == "mi") {
    std::cout << "I = " << format_bits(mutual_information(ch, rho).bits()) << "\n";
  } else {
    std::cout << "I_c = " << format_bits(coherent_information(ch, rho)) << "\n";
  }
  return kExitOk;
}

int run_sweep(const std::string& family, const std::string& key, const std::string& params,
              const std::string& range, const std::string& out_path, const OptimizerConfig& cfg) {
  const ParamMap fixed = parse_param_list(params);
  std::vector<SweepRow> rows;
  try {
    rows = capacity_sweep(family, key.empty() ? default_sweep_parameter(family) : key, parse_range(range),
                          fixed, cfg);
  } catch (const std::out_of_range& e) {
    throw SpecError(std::string("parameter out of range: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  write_file(out_path, sweep_csv(rows));
  return kExitOk;
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed, const std::string& report_path,
               bool timing) {
  std::vector<std::string> ids;
  if (suite == "all") {
    ids = suite_ids();
  } else {
    try {
      suite_tolerance(suite);
    } catch (const std::invalid_argument& e) {
      throw SpecError(e.what());
    }
    ids = {suite};
  }
  if (trials < 1) throw SpecError("--trials must be positive");

  std::vector<SuiteReport> reports;
  int failures = 0;
  for (const auto& id : ids) {
    reports.push_back(run_suite(id, trials, seed));
    const auto& r = reports.back();
    failures += r.failures;
    std::cout << r.suite_id << ": " << (r.failures == 0 ? "PASS" : "FAIL") << " trials=" << r.trials
              << " failures=" << r.failures << " worst_slack=" << format_bits(r.worst_slack_bits) << "\n";
    std::cerr << r.suite_id << " took " << r.elapsed_seconds << " s\n";
  }
  if (!report_path.empty()) {
    write_file(report_path, suite == "all" ? report_json(reports, timing) : report_json(reports.front(), timing));
  }
  return failures == 0 ? kExitOk : kExitSuiteFailure;
}

int run_info(const ChannelSource& src) {
  const QuantumChannel ch = load_channel(src);
  const auto cptp = validate_cptp(ch);
  std::printf("dim_in: %d\ndim_out: %d\nkraus_rank: %d\n", ch.dim_in(), ch.dim_out(), ch.kraus_rank());
  std::printf("cptp_deviation: %.6e\n", cptp.deviation);
  std::printf("choi_spectrum:");
  const RVector spectrum = hermitian_eigenvalues(choi_of(ch).state().matrix());
  for (double v : spectrum) std::printf(" %.6f", std::abs(v) < 5e-7 ? 0.0 : v);
  std::printf("\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-assisted capacity toolkit"};
  app.require_subcommand(1);

  ChannelSource compute_src;
  std::string quantity = "ce";
  std::string state_file;
  OptimizerConfig cfg;
  auto* compute = app.add_subcommand("compute", "Compute a capacity or information quantity");
  add_channel_options(compute, compute_src);
  compute->add_option("--quantity", quantity, "ce | c1 | mi | ci")
      ->check(CLI::IsMember({"ce", "c1", "mi", "ci"}));
  compute->add_option("--input-state", state_file, "Density matrix document (JSON), for mi and ci");
  compute->add_option("--restarts", cfg.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  compute->add_option("--seed", cfg.seed, "Optimizer seed");

  std::string sweep_family, sweep_key, sweep_params, sweep_range, sweep_out;
  OptimizerConfig sweep_cfg;
  auto* sweep = app.add_subcommand("sweep", "C_E over a grid of one family parameter, written as CSV");
  sweep->add_option("--builtin", sweep_family, "Channel family")->required();
  sweep->add_option("--param", sweep_key, "Swept parameter (default: the family's noise parameter)");
  sweep->add_option("--params", sweep_params, "Fixed parameters, K=V,...");
  sweep->add_option("--range", sweep_range, "START,END,COUNT")->required();
  sweep->add_option("--out", sweep_out, "Output CSV file")->required();
  sweep->add_option("--restarts", sweep_cfg.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_cfg.seed, "Optimizer seed");

  std::string suite;
  int trials = 100;
  std::uint64_t verify_seed = 42;
  std::string report_path;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "Run inequality suites");
  verify->add_option("--suite", suite, "Suite id or 'all'")->required();
  verify->add_option("--trials", trials, "Trials per suite");
  verify->add_option("--seed", verify_seed, "Base seed");
  verify->add_option("--report", report_path, "JSON report file");
  verify->add_flag("--timing", timing, "Write measured elapsed_seconds into the report");

  ChannelSource info_src;
  auto* info = app.add_subcommand("info", "Dimensions, Kraus rank, CPTP deviation and Choi spectrum");
  add_channel_options(info, info_src);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (compute->parsed()) return run_compute(compute_src, quantity, state_file, cfg);
    if (sweep->parsed()) return run_sweep(sweep_family, sweep_key, sweep_params, sweep_range, sweep_out, sweep_cfg);
    if (verify->parsed()) return run_verify(suite, trials, verify_seed, report_path, timing);
    if (info->parsed()) return run_info(info_src);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
