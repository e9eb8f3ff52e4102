#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ellfuse/core.hpp"

#ifndef ELLFUSE_CLI_PATH
#error "ELLFUSE_CLI_PATH must point at the built CLI binary"
#endif

namespace {

const std::string& work_dir() {
  static const std::string dir = [] {
    const std::string d =
        "/tmp/ellfuse_cli_test_" + std::to_string(::getpid());
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct CmdResult {
  int code = -1;
  std::string out;
};

// Run the CLI with the given arguments; `env` is prepended verbatim
// (e.g. "VERIFY_SEED=7").  stderr is discarded; stdout is captured.
CmdResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const std::string capture =
      work_dir() + "/stdout" + std::to_string(counter++) + ".txt";
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += std::string("\"") + ELLFUSE_CLI_PATH + "\" " + args + " > " +
         capture + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CmdResult r;
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(capture);
  return r;
}

std::vector<std::string> split_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(line);
  return rows;
}

std::vector<std::string> split_entries(const std::string& line) {
  std::vector<std::string> entries;
  size_t pos = 0;
  while (pos < line.size()) {
    const auto next = line.find("  ", pos);
    entries.push_back(line.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 2;
  }
  return entries;
}

std::string format12(std::complex<double> z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

}  // namespace

TEST_CASE("verify exits 0 and prints a summary when identities pass") {
  const auto r = run_cli("verify --suite theta-core --points 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("identity") != std::string::npos);
  CHECK(r.out.find("pass") != std::string::npos);
  CHECK(r.out.find("summary:") != std::string::npos);
  CHECK(r.out.find(" 0 failed") != std::string::npos);
}

TEST_CASE("verify exits 1 when a starved cutoff breaks an identity") {
  const auto r =
      run_cli("verify --suite fusion21-agreement --points 3 --cutoff 2");
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("verify --no-such-flag").code == 2);
  CHECK(run_cli("verify --suite no-such-suite --points 1").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("eval theta --u 0.3").code == 2);        // missing --k
  CHECK(run_cli("eval theta --k 4 --u 0.3").code == 2);  // bad index
  CHECK(run_cli("verify --points 0").code == 2);
}

TEST_CASE("stable JSON reports are byte-identical across runs") {
  const std::string j1 = work_dir() + "/stable1.json";
  const std::string j2 = work_dir() + "/stable2.json";
  const std::string args = "verify --suite theta-core --suite vertex-unitarity"
                           " --points 3 --stable --json ";
  REQUIRE(run_cli(args + j1).code == 0);
  REQUIRE(run_cli(args + j2).code == 0);
  const auto b1 = slurp(j1);
  CHECK(!b1.empty());
  CHECK(b1.front() == '[');
  CHECK(b1 == slurp(j2));
  CHECK(b1.find("\"ms\"") == std::string::npos);
}

TEST_CASE("timed JSON reports include the ms field") {
  const std::string j = work_dir() + "/timed.json";
  REQUIRE(run_cli("verify --suite theta-core --points 2 --json " + j).code ==
          0);
  CHECK(slurp(j).find("\"ms\"") != std::string::npos);
}

TEST_CASE("eval theta prints the library value in fixed format") {
  const auto r = run_cli("eval theta --k 1 --u 0.3 --tau-im 0.8");
  REQUIRE(r.code == 0);
  const auto expect = format12(
      ellfuse::theta(1, std::complex<double>(0.3), {0.0, 0.8}, 32));
  CHECK(r.out == expect + "\n");

  const auto rc = run_cli("eval theta --k 0 --u 0.25,0.1");
  REQUIRE(rc.code == 0);
  const auto expect_c = format12(
      ellfuse::theta(0, std::complex<double>(0.25, 0.1), {0.0, 1.2}, 32));
  CHECK(rc.out == expect_c + "\n");
}

TEST_CASE("print rmatrix emits a 4x4 grid") {
  const auto r = run_cli("print rmatrix --u 0.31");
  REQUIRE(r.code == 0);
  const auto rows = split_rows(r.out);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) CHECK(split_entries(row).size() == 4);
}

TEST_CASE("print fateev emits a 9x9 grid with 21 nonzero entries") {
  const auto r = run_cli("print fateev --u 0.31");
  REQUIRE(r.code == 0);
  const auto rows = split_rows(r.out);
  REQUIRE(rows.size() == 9);
  int nonzero = 0;
  for (const auto& row : rows) {
    const auto entries = split_entries(row);
    REQUIRE(entries.size() == 9);
    for (const auto& e : entries)
      if (e != "0+0i") ++nonzero;
  }
  CHECK(nonzero == 21);
}

TEST_CASE("config files supply defaults and flags take precedence") {
  const std::string cfg = work_dir() + "/verify.cfg";
  const std::string ja = work_dir() + "/cfg_a.json";
  const std::string jb = work_dir() + "/cfg_b.json";
  const std::string jc = work_dir() + "/cfg_c.json";
  const std::string jd = work_dir() + "/cfg_d.json";
  spit(cfg,
       "# verification defaults\n"
       "suite = theta-core\n"
       "points = 2   # two sampled points\n"
       "seed = 7\n"
       "stable = true\n");

  REQUIRE(run_cli("verify --config " + cfg + " --json " + ja).code == 0);
  REQUIRE(run_cli("verify --suite theta-core --points 2 --seed 7 --stable"
                  " --json " + jb).code == 0);
  CHECK(slurp(ja) == slurp(jb));

  // --seed on the command line wins over the file.
  REQUIRE(run_cli("verify --config " + cfg + " --seed 9 --json " + jc).code ==
          0);
  REQUIRE(run_cli("verify --suite theta-core --points 2 --seed 9 --stable"
                  " --json " + jd).code == 0);
  CHECK(slurp(jc) == slurp(jd));
  CHECK(slurp(jc) != slurp(ja));
}

TEST_CASE("unknown config keys are rejected") {
  const std::string cfg = work_dir() + "/bad.cfg";
  spit(cfg, "bogus = 1\n");
  CHECK(run_cli("verify --config " + cfg).code == 2);
  spit(cfg, "points 2\n");  // missing '='
  CHECK(run_cli("verify --config " + cfg).code == 2);
  CHECK(run_cli("verify --config " + work_dir() + "/absent.cfg").code == 2);
}

TEST_CASE("VERIFY_SEED overrides the seed flag") {
  const std::string je = work_dir() + "/env_e.json";
  const std::string jf = work_dir() + "/env_f.json";
  REQUIRE(run_cli("verify --suite theta-core --points 2 --seed 7 --stable"
                  " --json " + je, "VERIFY_SEED=9").code == 0);
  REQUIRE(run_cli("verify --suite theta-core --points 2 --seed 9 --stable"
                  " --json " + jf).code == 0);
  CHECK(slurp(je) == slurp(jf));
  CHECK(run_cli("verify --suite theta-core --points 2",
                "VERIFY_SEED=abc").code == 2);
}
