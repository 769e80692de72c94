#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

// Exercises the installed command-line contract: subcommands, output
// schemas, and the exit code mapping.

namespace {

std::string cli_path() {
  const char* p = std::getenv("TLAB_CLI_PATH");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (size_t got = fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("info runs", "[cli]") {
  const auto r = run("info");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("toeplitz-lab") != std::string::npos);
}

TEST_CASE("moment-map values and domain violations", "[cli]") {
  const auto origin = run("moment-map --n 3 \"0, 0, 0\"");
  REQUIRE(origin.exit_code == 0);
  REQUIRE(origin.output.find("mu_so2 = 0") != std::string::npos);

  const auto inner = run("moment-map --n 3 \"0.5, 0, 0\"");
  REQUIRE(inner.exit_code == 0);
  REQUIRE(inner.output.find("-0.33333333333333") != std::string::npos);

  const auto boundary = run("moment-map --n 3 \"0.5, 0.5i, 0\"");
  REQUIRE(boundary.exit_code == 4);
  REQUIRE(boundary.output.find("POINT_NOT_IN_DOMAIN") != std::string::npos);
}

TEST_CASE("eigenvalues table and parse failures", "[cli]") {
  const auto unit = run(
      "eigenvalues --symbol \"moment: 1\" --n 3 --lambda 4 --kmax 2 --method quad "
      "--out -");
  REQUIRE(unit.exit_code == 0);
  REQUIRE(unit.output.find("n,lambda,k1,k2,method,value,error,samples,seed") !=
          std::string::npos);
  REQUIRE(unit.output.find(",quad,1,") != std::string::npos);

  const auto json = run(
      "eigenvalues --symbol \"moment: exp(s)\" --n 3 --lambda 4 --kmax 1 "
      "--method quad --format json --out -");
  REQUIRE(json.exit_code == 0);
  REQUIRE(json.output.find("\"rows\"") != std::string::npos);

  const auto bad = run("eigenvalues --symbol \"moment: s +\" --n 3 --lambda 4");
  REQUIRE(bad.exit_code == 2);
  REQUIRE(bad.output.find("position") != std::string::npos);

  const auto bad_lambda =
      run("eigenvalues --symbol \"moment: 1\" --n 3 --lambda 1.0");
  REQUIRE(bad_lambda.exit_code == 3);
}

TEST_CASE("commutator verdicts", "[cli]") {
  const auto same = run(
      "commutator --symbol-a \"moment: exp(s)\" --symbol-b \"moment: exp(s)\" "
      "--n 3 --lambda 4 --degree 2 --samples 20000");
  REQUIRE(same.exit_code == 0);
  REQUIRE(same.output.find("CONSISTENT_WITH_ZERO") != std::string::npos);
}

TEST_CASE("toeplitz emits matrices with a diagonality report", "[cli]") {
  const auto r = run(
      "toeplitz --symbol \"moment: 1\" --n 3 --lambda 4 --degree 2 "
      "--samples 20000 --out -");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("\"entries\"") != std::string::npos);
  REQUIRE(r.output.find("max_off_block_over_stderr") != std::string::npos);
}

TEST_CASE("verify suites pass at reduced scale", "[cli]") {
  const auto jr = run("verify --suite jordan");
  REQUIRE(jr.exit_code == 0);
  REQUIRE(jr.output.find("PASS") != std::string::npos);

  const auto br = run("verify --suite branching");
  REQUIRE(br.exit_code == 0);

  // tampered tolerance: the harness itself must notice
  const auto tampered = run("verify --suite branching --tolerance-scale 0");
  REQUIRE(tampered.exit_code != 0);
  REQUIRE(tampered.output.find("FAIL") != std::string::npos);
}

TEST_CASE("gram honors the cache directory flag", "[cli]") {
  const std::string dir = "/tmp/tlab-cli-cache";
  std::filesystem::remove_all(dir);
  const auto r = run("gram --n 3 --lambda 4 --degree 2 --samples 20000 --cache-dir " +
                     dir + " --out /dev/null");
  REQUIRE(r.exit_code == 0);
  const auto ls = run("gram --n 3 --lambda 4 --degree 2 --samples 20000 --cache-dir " +
                      dir + " --out /dev/null");
  REQUIRE(ls.exit_code == 0);
  std::filesystem::remove_all(dir);
}
