// File formats: channel specs and density-matrix documents (JSON in), suite
// reports (JSON out), capacity sweeps (CSV out).
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "caplab/capacity.hpp"
#include "caplab/channels.hpp"
#include "caplab/verify.hpp"

namespace caplab {

/// Malformed or invalid input document. The message carries the line/field
/// context or the validation failure.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Either {"builtin": NAME, "params": {KEY: NUMBER, ...}} or
/// {"dim_in": d, "dim_out": e, "kraus": [op, ...]} where each op is a list of
/// rows and each entry a [re, im] pair.
QuantumChannel parse_channel_spec(const std::string& text);

/// {"dim": d, "matrix": [[re, im], ...]} with d*d entries in row-major order.
DensityMatrix parse_density_matrix(const std::string& text);

/// "k=v,k=v" -> map. Throws SpecError on malformed pairs.
ParamMap parse_param_list(const std::string& text);

/// Single report object; elapsed_seconds is written as 0 unless
/// include_timing is set, so identical runs give identical bytes.
std::string report_json(const SuiteReport& report, bool include_timing = false);
/// Array of report objects.
std::string report_json(const std::vector<SuiteReport>& reports, bool include_timing = false);

/// Header "param,ce_bits", %.6f values, LF endings.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// "%.6f bits"
std::string format_bits(double bits);

std::string read_file(const std::string& path);

}  // namespace caplab
