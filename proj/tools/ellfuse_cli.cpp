// Command-line harness: run identity verification suites with deterministic
// sampling and emit text/JSON reports, evaluate theta functions, and print
// the R-matrices at a chosen spectral point.
//
// Exit codes: 0 all evaluated identities pass; 1 at least one fails;
// 2 usage, configuration, or I/O error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellfuse/ellfuse.hpp"

namespace {

std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  const std::string re_part = text.substr(0, comma);
  size_t pos = 0;
  const double re = std::stod(re_part, &pos);
  if (pos != re_part.size())
    throw std::invalid_argument("expected RE[,IM], got '" + text + "'");
  double im = 0.0;
  if (comma != std::string::npos) {
    const std::string im_part = text.substr(comma + 1);
    const double val = std::stod(im_part, &pos);
    if (pos != im_part.size() || im_part.empty())
      throw std::invalid_argument("expected RE[,IM], got '" + text + "'");
    im = val;
  }
  return {re, im};
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Plain-text config: one `key = value` per line, `#` comments, keys equal to
// the long verify flags without dashes.  Values given on the command line
// take precedence over the file.
struct VerifyFileConfig {
  ellfuse::SuiteConfig cfg;
  std::string json_path;
  bool stable = false;
};

void apply_config_file(const std::string& path, const CLI::App& verify,
                       VerifyFileConfig& out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  const auto given = [&](const std::string& flag) {
    return verify.count(flag) > 0;
  };
  std::vector<std::string> file_suites;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    const auto as_double = [&]() {
      size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size())
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": bad numeric value '" + value + "'");
      return v;
    };
    const auto as_int = [&]() {
      size_t pos = 0;
      const long v = std::stol(value, &pos);
      if (pos != value.size())
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": bad integer value '" + value + "'");
      return v;
    };
    if (key == "suite") {
      file_suites.push_back(value);
    } else if (key == "r") {
      if (!given("--r")) out.cfg.r = as_double();
    } else if (key == "tau-im") {
      if (!given("--tau-im")) out.cfg.tau_im = as_double();
    } else if (key == "cutoff") {
      if (!given("--cutoff")) out.cfg.cutoff = static_cast<int>(as_int());
    } else if (key == "points") {
      if (!given("--points")) out.cfg.points = static_cast<int>(as_int());
    } else if (key == "seed") {
      if (!given("--seed"))
        out.cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "tol") {
      if (!given("--tol")) out.cfg.tol = as_double();
    } else if (key == "json") {
      if (!given("--json")) out.json_path = value;
    } else if (key == "stable") {
      if (!given("--stable")) {
        if (value == "true" || value == "1")
          out.stable = true;
        else if (value == "false" || value == "0")
          out.stable = false;
        else
          throw std::runtime_error("config line " + std::to_string(lineno) +
                                   ": stable must be true/false/1/0");
      }
    } else {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }
  }
  if (!file_suites.empty() && !given("--suite"))
    out.cfg.suites = std::move(file_suites);
}

std::string format_complex12(std::complex<double> z) {
  // Display negative zeros as plain zeros.
  double re = z.real(), im = z.imag();
  if (re == 0.0) re = std::fabs(re);
  if (im == 0.0) im = std::fabs(im);
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", re, im);
  return buf;
}

void print_matrix12(const ellfuse::Matrix<double>& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) std::fputs("  ", stdout);
      std::fputs(format_complex12(m(i, j)).c_str(), stdout);
    }
    std::fputc('\n', stdout);
  }
}

int run_verify(ellfuse::SuiteConfig cfg, const std::string& json_path,
               bool stable) {
  if (const char* env = std::getenv("VERIFY_SEED")) {
    const std::string text(env);
    try {
      size_t pos = 0;
      const unsigned long long v = std::stoull(text, &pos);
      if (pos != text.size() || text.empty())
        throw std::invalid_argument("trailing characters");
      cfg.seed = static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
      std::cerr << "error: VERIFY_SEED must be a non-negative integer, got '"
                << text << "'\n";
      return 2;
    }
  }

  ellfuse::RunResult result;
  try {
    result = ellfuse::run_verification(cfg);
  } catch (const ellfuse::argument_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ellfuse::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";

  std::cout << ellfuse::reports_to_text(result.reports, stable);
  long failed = 0;
  for (const auto& r : result.reports)
    if (!r.pass) ++failed;
  std::cout << "summary: " << result.evaluated << " evaluated, "
            << (result.evaluated - failed) << " passed, " << failed
            << " failed, " << result.excluded << " excluded (resampled)\n";

  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open '" << json_path << "' for writing\n";
      return 2;
    }
    out << ellfuse::reports_to_json(result.reports, stable) << "\n";
    out.flush();
    if (!out.good()) {
      std::cerr << "error: failed while writing '" << json_path << "'\n";
      return 2;
    }
  }

  return result.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ellfuse: elliptic R-matrices, their symmetric fusions, fused face "
      "weights, and intertwining vectors, with identity verification"};
  app.require_subcommand(1);

  // --- verify ---------------------------------------------------------
  ellfuse::SuiteConfig cfg;
  std::string json_path;
  bool stable = false;
  auto* verify =
      app.add_subcommand("verify", "Run identity verification suites");
  verify->add_option("--suite", cfg.suites,
                     "Suite to run (repeatable; default: all suites)");
  verify->add_option("--r", cfg.r, "Elliptic level parameter r (> 2)")
      ->capture_default_str();
  verify
      ->add_option("--tau-im", cfg.tau_im,
                   "Imaginary part of the modular parameter tau")
      ->capture_default_str();
  verify->add_option("--cutoff", cfg.cutoff, "Series/product truncation cutoff")
      ->capture_default_str();
  verify
      ->add_option("--points", cfg.points,
                   "Sampled parameter points per identity")
      ->capture_default_str();
  verify
      ->add_option("--seed", cfg.seed,
                   "Sampling seed (env VERIFY_SEED overrides)")
      ->capture_default_str();
  verify->add_option(
      "--tol", cfg.tol,
      "Override every per-identity threshold with this tolerance");
  verify->add_option("--json", json_path,
                     "Write the machine-readable report to PATH");
  verify->add_flag("--stable", stable,
                   "Omit timing fields so repeated runs are byte-identical");
  std::string config_path;
  verify->add_option("--config", config_path,
                     "Plain-text config file: one key = value per line, "
                     "# comments, keys equal to long flag names; explicit "
                     "flags take precedence");

  // --- eval -------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "Evaluate a special function");
  eval->require_subcommand(1);
  int theta_k = 1;
  std::string eval_u;
  double eval_tau_im = 1.2;
  int eval_cutoff = 32;
  auto* eval_theta =
      eval->add_subcommand("theta", "Evaluate theta_k(u | i*tau-im)");
  eval_theta->add_option("--k", theta_k, "Theta index (0, 1, 2, or 3)")
      ->required();
  eval_theta->add_option("--u", eval_u, "Argument, RE or RE,IM")->required();
  eval_theta
      ->add_option("--tau-im", eval_tau_im,
                   "Imaginary part of the modular parameter tau")
      ->capture_default_str();
  eval_theta
      ->add_option("--cutoff", eval_cutoff,
                   "Series/product truncation cutoff")
      ->capture_default_str();

  // --- print ------------------------------------------------------------
  auto* print =
      app.add_subcommand("print", "Print a matrix at a spectral point");
  print->require_subcommand(1);
  std::string print_u;
  double print_r = 6.0;
  double print_tau_im = 1.2;
  int print_cutoff = 32;
  auto* pr_rmatrix = print->add_subcommand(
      "rmatrix", "4x4 elliptic R-matrix (rows/columns: ++, +-, -+, --)");
  auto* pr_rmatrix22 = print->add_subcommand(
      "rmatrix22", "9x9 symmetric-square fused R-matrix");
  auto* pr_fateev =
      print->add_subcommand("fateev", "9x9 21-vertex R-matrix");
  for (auto* sub : {pr_rmatrix, pr_rmatrix22, pr_fateev}) {
    sub->add_option("--u", print_u, "Spectral parameter, RE or RE,IM")
        ->required();
    sub->add_option("--r", print_r, "Elliptic level parameter r (> 2)")
        ->capture_default_str();
    sub->add_option("--tau-im", print_tau_im,
                    "Imaginary part of the modular parameter tau")
        ->capture_default_str();
    sub->add_option("--cutoff", print_cutoff,
                    "Series/product truncation cutoff")
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      VerifyFileConfig merged;
      merged.cfg = cfg;
      merged.json_path = json_path;
      merged.stable = stable;
      if (!config_path.empty()) {
        try {
          apply_config_file(config_path, *verify, merged);
        } catch (const std::exception& e) {
          std::cerr << "error: " << e.what() << "\n";
          return 2;
        }
      }
      return run_verify(merged.cfg, merged.json_path, merged.stable);
    }

    if (eval_theta->parsed()) {
      const std::complex<double> u = parse_complex(eval_u);
      const std::complex<double> tau(0.0, eval_tau_im);
      const std::complex<double> value =
          ellfuse::theta(theta_k, u, tau, eval_cutoff);
      std::cout << format_complex12(value) << "\n";
      return 0;
    }

    if (print->parsed()) {
      const std::complex<double> u = parse_complex(print_u);
      const ellfuse::EllipticContext<double> ctx(
          print_r, std::complex<double>(0.0, print_tau_im), print_cutoff);
      if (pr_rmatrix->parsed())
        print_matrix12(ellfuse::baxter_r(u, ctx));
      else if (pr_rmatrix22->parsed())
        print_matrix12(ellfuse::fuse22(u, ctx));
      else
        print_matrix12(ellfuse::fateev_r(u, ctx));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::cerr << "error: no subcommand selected\n";
  return 2;
}
