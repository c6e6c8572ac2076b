#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "kappa/io.hpp"
#include "kappa/twist.hpp"

using namespace kappa;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "kappa");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("star examples") {
  auto r = run({"star", "--family", "abelian", "--param", "0", "x1", "x0"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.out.find("x0*x1 - i*h*x1") != std::string::npos);
  r = run({"star", "--family", "abelian", "--param", "1", "1", "1", "--format", "csv"});
  CHECK(r.out == "twist,f,g,result\nabelian(s=1),1,1,1\n");
  r = run({"star", "--family", "theta", "--theta", "0,1;-1,0", "x0", "x1"});
  CHECK(r.out.find("x0*x1 + 1/2*i*h") != std::string::npos);
}

TEST_CASE("JSON output round-trips through the serializers") {
  auto r = run({"--order", "4", "--format", "json", "star", "--family", "jordanian", "--param", "3", "x0*x1", "x1^2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  std::string elem = j[0]["element"].dump();
  auto w = weyl_from_json(elem);
  auto t = build_twist(TwistFamily::jordanian, 3, 4);
  CHECK(w == star_product(t, parse_polynomial("x0*x1", 4), parse_polynomial("x1^2", 4)));
  CHECK(weyl_to_json(w) == elem);
}

TEST_CASE("verify suites exit 0") {
  CHECK(run({"verify", "twists", "--family", "abelian", "--param", "1/2", "--order", "4"}).code == 0);
  CHECK(run({"verify", "hopf", "--basis", "classical", "--order", "3"}).code == 0);
  CHECK(run({"verify", "dsr", "--realization", "natural", "--order", "4"}).code == 0);
  auto r = run({"verify", "dsr", "--realization", "bicross", "--order", "4", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(count(r.out, ",FAIL,") == 0);
  CHECK(count(r.out, ",pass,") > 20);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"verify", "bogus"}).code == cli::kExitUsage);
  CHECK(run({"--order", "1", "star", "x0", "x1"}).code == cli::kExitUsage);
  CHECK(run({"--order", "17", "star", "x0", "x1"}).code == cli::kExitUsage);
  CHECK(run({"--format", "xml", "star", "x0", "x1"}).code == cli::kExitUsage);
  CHECK(run({"star", "--family", "nope", "x0", "x1"}).code == cli::kExitUsage);
  auto r = run({"star", "x0", "x1 + * 2"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("position 5") != std::string::npos);
  CHECK(run({"delay", "--model", "abelian", "--E", "1e20", "--l-mpc", "1"}).code == cli::kExitUsage);
  CHECK(run({"delay", "--model", "unknown", "--E", "1", "--l-mpc", "1"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitPass);
}

TEST_CASE("delay and bounds rows") {
  auto r = run({"--format", "csv", "delay", "--model", "custom", "--b1", "0", "--b2", "0", "--E", "10", "--l-mpc", "1",
                "--MQ", "1e19"});
  CHECK(r.out == "model,param,b1,b2,B1,B2,E_GeV,z,delay_s,bound_GeV\ncustom,,0,0,0,0,10,,0,\n");
  r = run({"--format", "json", "delay", "--model", "abelian", "--param", "1", "--E", "10", "--l-mpc", "1000", "--MQ",
           "1.22e19"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j[0]["delay_s"].get<double>() < 0);
  r = run({"--format", "csv", "bounds", "--baseline", "mccf", "--model", "jordanian-hermitian"});
  CHECK(r.out.find(",2.88e+18\n") != std::string::npos);
  r = run({"--format", "csv", "bounds", "--parameters"});
  CHECK(r.out.find("-1.2085") != std::string::npos);
}

TEST_CASE("CSV numbers use 12 significant digits") {
  auto r = run({"--format", "csv", "delay", "--model", "abelian", "--param", "1/3", "--E", "10", "--l-mpc", "1000"});
  // b2 = 1/18
  CHECK(r.out.find(",0.0555555555556,") != std::string::npos);
}

TEST_CASE("config file, environment and flag precedence") {
  auto terms = [](const Run& r) { return count(r.out, "h^"); };
  std::vector<std::string> cmd{"--format", "csv", "realization", "--family", "abelian", "--param", "0"};
  auto with = [&](std::vector<std::string> pre) {
    pre.insert(pre.end(), cmd.begin(), cmd.end());
    return run(pre);
  };
  int base3 = terms(with({"--order", "3"}));
  int base5 = terms(with({"--order", "5"}));
  CHECK(base5 > base3);
  std::string path = "kappa_cli_test.cfg";
  std::ofstream(path) << "order=3\n";
  CHECK(terms(with({"--config", path})) == base3);
  CHECK(terms(with({"--config", path, "--order", "5"})) == base5);
  setenv("KAPPA_ORDER", "5", 1);
  CHECK(terms(with({})) == base5);
  CHECK(terms(with({"--order", "3"})) == base3);
  unsetenv("KAPPA_ORDER");
  std::remove(path.c_str());
}

TEST_CASE("sampled checks are deterministic given the seed") {
  std::vector<std::string> a{"--seed", "5", "--order", "3", "--format", "csv", "verify", "dsr", "--realization", "random",
                             "--samples", "2"};
  auto r1 = run(a), r2 = run(a);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  a[1] = "6";
  CHECK(run(a).out != r1.out);
}

TEST_CASE("other commands") {
  CHECK(run({"--order", "3", "coproduct", "--family", "abelian", "--param", "1", "--generator", "P1"}).code == 0);
  CHECK(run({"--order", "3", "coproduct", "--basis", "classical", "--generator", "N1"}).code == 0);
  CHECK(run({"coproduct", "--basis", "classical", "--generator", "Q"}).code == cli::kExitUsage);
  CHECK(run({"--order", "3", "rmatrix", "--family", "jordanian", "--param", "1"}).code == 0);
  CHECK(run({"--order", "3", "realization", "--family", "natural"}).code == 0);
  auto r = run({"--format", "csv", "dispersion", "--model", "jordanian", "--param", "-1"});
  CHECK(r.out.find("jordanian,-1,0,0,0,0,0,0,0,0,pass") != std::string::npos);
  r = run({"--format", "csv", "dispersion", "--psi1", "-3", "--psi2", "2"});
  CHECK(r.out.find(",1,1,") != std::string::npos);
  r = run({"--metric", "+---", "schouten", "D^P0"});
  CHECK(r.out.find("yes") != std::string::npos);
  CHECK(run({"schouten", "D^Q"}).code == cli::kExitUsage);
}
