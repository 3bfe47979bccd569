#include "caplab/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace caplab {

namespace {

using json = nlohmann::ordered_json;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Turn the byte offset into a line/column pair.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SpecError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                    ": " + e.what());
  }
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw SpecError("field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) field_error(key, "missing");
  return obj.at(key);
}

int positive_int(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 4096) {
    field_error(field, "expected a positive integer");
  }
  return v.get<int>();
}

Complex complex_entry(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    field_error(field, "expected a [re, im] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

std::string index_path(const std::string& base, std::initializer_list<std::size_t> idx) {
  std::string s = base;
  for (std::size_t i : idx) s += "[" + std::to_string(i) + "]";
  return s;
}

QuantumChannel channel_from_builtin(const json& doc) {
  const json& family = doc.at("builtin");
  if (!family.is_string()) field_error("builtin", "expected a family name");
  ParamMap params;
  if (doc.contains("params")) {
    const json& p = doc.at("params");
    if (!p.is_object()) field_error("params", "expected an object");
    for (const auto& [key, value] : p.items()) {
      if (!value.is_number()) field_error("params." + key, "expected a number");
      params[key] = value.get<double>();
    }
  }
  try {
    return standard_channel(family.get<std::string>(), params);
  } catch (const std::out_of_range& e) {
    throw SpecError(std::string("parameter out of range: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
}

QuantumChannel channel_from_kraus(const json& doc) {
  const int din = positive_int(require(doc, "dim_in"), "dim_in");
  const int dout = positive_int(require(doc, "dim_out"), "dim_out");
  const json& ops = require(doc, "kraus");
  if (!ops.is_array() || ops.empty()) field_error("kraus", "expected a nonempty list of operators");

  std::vector<CMatrix> kraus;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const json& op = ops[k];
    if (!op.is_array() || op.size() != static_cast<std::size_t>(dout)) {
      field_error(index_path("kraus", {k}), "expected " + std::to_string(dout) + " rows");
    }
    CMatrix e(dout, din);
    for (std::size_t r = 0; r < op.size(); ++r) {
      const json& row = op[r];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(din)) {
        field_error(index_path("kraus", {k, r}), "expected " + std::to_string(din) + " entries");
      }
      for (std::size_t c = 0; c < row.size(); ++c) e(r, c) = complex_entry(row[c], index_path("kraus", {k, r, c}));
    }
    kraus.push_back(std::move(e));
  }
  const auto report = validate_cptp(kraus, din);
  if (!report.pass) {
    std::ostringstream os;
    os << "trace preservation violated, deviation " << report.deviation;
    throw SpecError(os.str());
  }
  try {
    return QuantumChannel(din, dout, std::move(kraus));
  } catch (const std::exception& e) {
    throw SpecError(e.what());
  }
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

json report_object(const SuiteReport& r, bool include_timing) {
  json params = json::object();
  for (const auto& [k, v] : r.worst_witness.params) {
    if (std::floor(v) == v && std::abs(v) < 1e15) {
      params[k] = static_cast<long long>(v);
    } else {
      params[k] = v;
    }
  }
  json out = json::object();
  out["suite"] = r.suite_id;
  out["trials"] = r.trials;
  out["failures"] = r.failures;
  out["worst_slack_bits"] = r.worst_slack_bits;
  out["worst_witness"] = {{"seed", r.worst_witness.seed}, {"params", params}};
  out["elapsed_seconds"] = include_timing ? r.elapsed_seconds : 0.0;
  return out;
}

}  // namespace

QuantumChannel parse_channel_spec(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw SpecError("channel spec must be a JSON object");
  if (doc.contains("builtin")) return channel_from_builtin(doc);
  return channel_from_kraus(doc);
}

DensityMatrix parse_density_matrix(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw SpecError("density matrix document must be a JSON object");
  const int d = positive_int(require(doc, "dim"), "dim");
  const json& entries = require(doc, "matrix");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d) * d) {
    field_error("matrix", "expected " + std::to_string(d * d) + " [re, im] entries");
  }
  CMatrix m(d, d);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    m(i / d, i % d) = complex_entry(entries[i], index_path("matrix", {i}));
  }
  try {
    return DensityMatrix(m);
  } catch (const std::exception& e) {
    throw SpecError(std::string("invalid density matrix: ") + e.what());
  }
}

ParamMap parse_param_list(const std::string& text) {
  ParamMap out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw SpecError("malformed parameter '" + item + "', expected KEY=VALUE");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      out[key] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw SpecError("parameter '" + key + "' is not a number: '" + value + "'");
    }
  }
  return out;
}

std::string report_json(const SuiteReport& report, bool include_timing) {
  return report_object(report, include_timing).dump(2) + "\n";
}

std::string report_json(const std::vector<SuiteReport>& reports, bool include_timing) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_object(r, include_timing));
  return arr.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param,ce_bits\n";
  for (const auto& r : rows) out += fixed6(r.param) + "," + fixed6(r.ce_bits) + "\n";
  return out;
}

std::string format_bits(double bits) { return fixed6(bits) + " bits"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace caplab
