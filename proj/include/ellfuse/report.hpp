#pragma once

// Verification reports: one record per evaluated identity instance, with a
// JSON emitter (array of objects with keys "identity", "params", "residual",
// "threshold", "pass", "ms") and a plain-text table.  In stable mode the
// timing field is omitted so output is byte-identical across runs.

#include <complex>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ellfuse {

struct ParamValue {
  bool is_int = false;
  long long int_value = 0;
  std::complex<double> complex_value;

  static ParamValue integer(long long v) {
    ParamValue p;
    p.is_int = true;
    p.int_value = v;
    return p;
  }
  static ParamValue complex_number(std::complex<double> z) {
    ParamValue p;
    p.complex_value = z;
    return p;
  }
};

using Params = std::vector<std::pair<std::string, ParamValue>>;

struct IdentityReport {
  std::string identity;
  Params params;
  double residual = 0;
  double threshold = 0;
  bool pass = false;
  double ms = 0;
};

namespace detail {

inline std::string format_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

inline std::string format_complex(std::complex<double> z, int digits) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.*g%+.*gi", digits, z.real(), digits,
                z.imag());
  return buf;
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const IdentityReport& r,
                                             bool stable) {
  nlohmann::ordered_json j;
  j["identity"] = r.identity;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [name, value] : r.params) {
    if (value.is_int)
      params[name] = value.int_value;
    else
      params[name] = nlohmann::ordered_json::array(
          {value.complex_value.real(), value.complex_value.imag()});
  }
  j["params"] = std::move(params);
  j["residual"] = r.residual;
  j["threshold"] = r.threshold;
  j["pass"] = r.pass;
  if (!stable) j["ms"] = r.ms;
  return j;
}

inline std::string reports_to_json(const std::vector<IdentityReport>& reports,
                                   bool stable) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r, stable));
  return arr.dump(2);
}

inline std::string params_to_text(const Params& params) {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += ' ';
    out += name;
    out += '=';
    out += value.is_int ? std::to_string(value.int_value)
                        : detail::format_complex(value.complex_value, 6);
  }
  return out;
}

inline std::string reports_to_text(const std::vector<IdentityReport>& reports,
                                   bool stable) {
  std::string out;
  size_t id_w = 8, par_w = 6;
  for (const auto& r : reports) {
    id_w = std::max(id_w, r.identity.size());
    par_w = std::max(par_w, params_to_text(r.params).size());
  }
  const auto pad = [](std::string s, size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  out += pad("identity", id_w) + "  " + pad("params", par_w) + "  " +
         pad("residual", 22) + "  " + pad("threshold", 10) + "  status";
  if (!stable) out += "      ms";
  out += '\n';
  for (const auto& r : reports) {
    out += pad(r.identity, id_w) + "  " + pad(params_to_text(r.params), par_w) +
           "  " + pad(detail::format_g(r.residual, 15), 22) + "  " +
           pad(detail::format_g(r.threshold, 3), 10) + "  " +
           (r.pass ? "pass  " : "FAIL  ");
    if (!stable) out += pad(detail::format_g(r.ms, 4), 8);
    out += '\n';
  }
  return out;
}

}  // namespace ellfuse
