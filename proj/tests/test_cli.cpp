// End-to-end checks that drive the installed command line binary through
// popen. CLI_PATH is injected by the build so the tests always exercise the
// freshly built tool.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) res.output += buf;
  const int status = ::pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("scperf prints the classic mixed-model summary") {
  const auto res = run_cli("scperf --phi 0.95 --theta 0.4 -L 2 --sl 0.95");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "bullwhip       1.44321"));
  CHECK(contains(res.output, "ss             10.323"));
  CHECK(contains(res.output, "sslt           4.201"));
}

TEST_CASE("scperf honours the precision override") {
  const auto res = run_cli(
      "scperf --phi 0.6 --phi -0.4 -L 10 --sl 0.95 --precision 6");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "bullwhip       1.059437"));
}

TEST_CASE("white-noise demand needs no safety stock at the median") {
  const auto res = run_cli("scperf --mu 10 --sigma 2 -L 4 --sl 0.5");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "bullwhip       1.00000"));
  CHECK(contains(res.output, "ss             0.000"));
  CHECK(contains(res.output, "sslt           0.000"));
}

TEST_CASE("psi lists the impulse weights with running sums") {
  const auto res = run_cli("psi --phi 0.95 --theta 0.4 -n 3");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "1.350000"));
  CHECK(contains(res.output, "1.282500"));
  CHECK(contains(res.output, "1.218375"));

  const auto csv = run_cli("psi --phi 0.95 --theta 0.4 -n 3 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(contains(csv.output, "j,psi,partial_sum,cum_sum_sq"));
  CHECK(contains(csv.output, "1,1.35,"));
}

TEST_CASE("the built-in tables reproduce their pinned cells") {
  const auto t1 = run_cli("table 1");
  CHECK(t1.exit_code == 0);
  CHECK(contains(t1.output, "5.035836"));

  const auto t2 = run_cli("table 2 --format csv");
  CHECK(t2.exit_code == 0);
  CHECK(contains(t2.output, "lead_time,m,ss,sslt"));
  CHECK(contains(t2.output, "2,1.44321,10.323,4.201"));
  CHECK(contains(t2.output, "32.137"));

  const auto t3 = run_cli("table 3");
  CHECK(t3.exit_code == 0);
  CHECK(contains(t3.output, "17.881"));
}

TEST_CASE("sweep presets cover their documented grids") {
  const auto fig3 = run_cli("sweep --preset fig3");
  CHECK(fig3.exit_code == 0);
  CHECK(contains(fig3.output, "phi,lead_time,m"));
  CHECK(contains(fig3.output, "0.5,1,1.75"));
  int lines = 0;
  for (const char c : fig3.output) lines += (c == '\n');
  CHECK(lines == 235);  // header plus 39 coefficients times 6 lead times

  const auto fig1 = run_cli("sweep --preset fig1");
  CHECK(fig1.exit_code == 0);
  CHECK(contains(fig1.output, "0.3,-0.3,1,1\n"));
}

TEST_CASE("custom sweeps leave unsupported cells empty") {
  const auto res = run_cli(
      "sweep --param theta --from -1.2 --to -0.8 --step 0.2 --phi 0.5 -L 1");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "theta,lead_time,m"));
  CHECK(contains(res.output, "-1.2,1,\n"));
  CHECK(contains(res.output, "-1,1,\n"));
}

TEST_CASE("validate reports roots and fails on bad models") {
  const auto ok = run_cli("validate --phi 0.7 --phi 0.2");
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "stationary  yes"));
  CHECK(contains(ok.output, "modulus 1.089454"));
  CHECK(contains(ok.output, "modulus 4.589454"));

  const auto bad = run_cli("validate --phi 1.5");
  CHECK(bad.exit_code == 3);
  CHECK(contains(bad.output, "stationary  no"));
}

TEST_CASE("simulate agrees with the analytic measure on white noise") {
  const auto res = run_cli(
      "simulate --mu 10 --sigma 1 --periods 3000 --replications 3 --seed 7");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "empirical_m   1.00000"));
  CHECK(contains(res.output, "verdict       PASS"));
}

TEST_CASE("exit codes distinguish the failure families") {
  CHECK(run_cli("scperf --phi 0.5 --sl 1.2").exit_code == 2);
  CHECK(run_cli("scperf --phi 1.5").exit_code == 3);
  CHECK(run_cli("").exit_code >= 100);
  CHECK(run_cli("scperf --no-such-flag 1").exit_code >= 100);

  const auto ver = run_cli("--version");
  CHECK(ver.exit_code == 0);
  CHECK(contains(ver.output, "bullwhip"));
}

TEST_CASE("json output parses and is stable across invocations") {
  const std::string cmd =
      "scperf --phi 0.95 --theta 0.4 -L 2 --sl 0.95 --format json";
  const auto a = run_cli(cmd);
  const auto b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  const auto j = nlohmann::json::parse(a.output);
  CHECK(j["bullwhip"].get<double>() == doctest::Approx(1.44321).epsilon(1e-5));
  CHECK(j["request"]["phi"][0].get<double>() == 0.95);
  CHECK(j["request"]["theta"][0].get<double>() == 0.4);
  CHECK(j["lead_time"].get<int>() == 2);

  const auto psi = nlohmann::json::parse(
      run_cli("psi --phi 0.5 -n 5 --format json").output);
  CHECK(psi["weights"].size() == 6);
  CHECK(psi["weights"][1].get<double>() == 0.5);

  const auto sim = nlohmann::json::parse(
      run_cli("simulate --mu 5 --sigma 1 --periods 2500 --replications 2 "
              "--seed 3 --format json")
          .output);
  CHECK(sim["verdict"].get<std::string>() == "PASS");
  CHECK(sim["per_replication"].size() == 2);
}

TEST_SUITE_END();
