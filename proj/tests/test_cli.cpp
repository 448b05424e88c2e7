#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "carleson/cli.hpp"

using namespace carleson;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

double field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(key + " ", 0) == 0) return std::stod(line.substr(key.size()));
  FAIL("missing field " << key);
  return 0;
}

}  // namespace

TEST_CASE("affine composition with |a| = 1 is not summing") {
  const Run r = run({"classify-composition", "--a", "1", "--b", "0", "--p", "2", "--r", "1", "--alpha", "1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("NOT_SUMMING") != std::string::npos);
}

TEST_CASE("volterra and differentiation subcommands") {
  const Run v = run({"classify-volterra", "--g", "1", "--p", "2", "--r", "2"});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find("verdict         SUMMING") != std::string::npos);
  const Run d = run({"classify-differentiation", "--k", "-1", "--p", "2", "--r", "2", "--measure", "zero", "--window", "6"});
  CHECK(d.code != kExitError);
}

TEST_CASE("embedding bracket contains the Hilbert-Schmidt norm") {
  const std::string path = "test_cli_demo.csv";
  std::ofstream(path) << "x,y,mass\n0,0,1\n1,0.5,2\n-0.7,1.1,0.5\n";
  const Run r = run({"classify-embedding", "--p", "2", "--r", "2", "--alpha", "1", "--weight", "const:1", "--measure",
                     "atoms:" + path});
  std::remove(path.c_str());
  CHECK(r.code == kExitOk);
  // ‖K_z‖² e^{−|z|²} = 1/π at α = 1, so π₂ = sqrt(M/π).
  const double exact = std::sqrt(3.5 / M_PI);
  CHECK(field(r.out, "pi_low") <= exact);
  CHECK(field(r.out, "pi_high") >= exact);
}

TEST_CASE("CSV output is byte-identical across runs") {
  const std::vector<std::string> base{"classify-embedding", "--p", "1.5", "--r", "1", "--measure", "gauss:1", "--window", "6"};
  auto a = base, b = base;
  a.insert(a.end(), {"--csv", "test_cli_a.csv"});
  b.insert(b.end(), {"--csv", "test_cli_b.csv"});
  run(a);
  run(b);
  const std::string ca = slurp("test_cli_a.csv");
  CHECK(ca == slurp("test_cli_b.csv"));
  CHECK(ca.rfind(csv_header() + "\n", 0) == 0);
  CHECK(ca.find('\r') == std::string::npos);
  std::remove("test_cli_a.csv");
  std::remove("test_cli_b.csv");
}

TEST_CASE("sweep writes sorted rows deterministically") {
  std::ofstream("test_cli_sweep.cfg") << "p = 2 | 1.5\nr = 1 | 2\nmeasure = gauss:1 | zero\nwindow = 6\n";
  const Run a = run({"sweep", "--config", "test_cli_sweep.cfg", "--csv", "test_cli_sweep_a.csv"});
  const Run b = run({"sweep", "--config", "test_cli_sweep.cfg", "--csv", "test_cli_sweep_b.csv"});
  CHECK(a.code != kExitError);
  const std::string ca = slurp("test_cli_sweep_a.csv");
  CHECK(ca == slurp("test_cli_sweep_b.csv"));
  std::istringstream in(ca);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() == 9);
  for (std::size_t i = 2; i < lines.size(); ++i) CHECK(lines[i - 1] < lines[i]);
  CHECK(lines[1].rfind("case_0000,2,1,1,", 0) == 0);
  for (const char* f : {"test_cli_sweep.cfg", "test_cli_sweep_a.csv", "test_cli_sweep_b.csv"}) std::remove(f);
}

TEST_CASE("errors exit with 1 and a message on stderr") {
  const Run bad_weight = run({"classify-embedding", "--p", "2", "--r", "2", "--weight", "wiggle:1", "--measure", "zero"});
  CHECK(bad_weight.code == kExitError);
  CHECK(bad_weight.err.find("ParseError") != std::string::npos);
  CHECK(run({"no-such-command"}).code == kExitError);
  CHECK(run({"classify-composition", "--a", "1"}).code == kExitError);
  CHECK(run({"verify", "--suite", "bogus"}).code == kExitError);
  std::ofstream("test_cli_badkey.cfg") << "p = 2\nr = 2\nmeasure = zero\nq = 3\n";
  CHECK(run({"sweep", "--config", "test_cli_badkey.cfg"}).code == kExitError);
  std::remove("test_cli_badkey.cfg");
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("verify reports are deterministic") {
  const Run a = run({"verify", "--suite", "diag", "--seed", "7"});
  const Run b = run({"verify", "--suite", "diag", "--seed", "7"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("PASS") != std::string::npos);
}

TEST_CASE("apr and kernel-norm subcommands") {
  const Run apr = run({"apr-constant", "--p", "2", "--t", "1", "--weight", "poly:1", "--window", "6"});
  CHECK(apr.code == kExitOk);
  CHECK(apr.out.find("membership      stable") != std::string::npos);
  const Run kn = run({"kernel-norm", "--u", "1+i", "--p", "2", "--alpha", "1"});
  CHECK(kn.code == kExitOk);
  CHECK(field(kn.out, "ratio") > 0);
}
