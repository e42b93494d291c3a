#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mfent_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result run_cli(const fs::path& dir, const std::string& command, const std::string& config,
               const std::string& extra = "") {
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << config;
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string("\"") + MFENT_CLI_PATH + "\" " + command + " --config \"" + cfg.string() +
                          "\" --out \"" + (dir / "out").string() + "\" " + extra + " > \"" +
                          (dir / "stdout.txt").string() + "\" 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err)};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const char* kFair = R"({"alphabet": 2, "measure": {"kind": "bernoulli", "p": [0.5, 0.5]},
                       "q_grid": [-2, -1, 0, 1, 2]})";

}  // namespace

TEST_CASE("spectrum command writes the h curve") {
  const fs::path dir = scratch("spectrum");
  const Result r = run_cli(dir, "spectrum", kFair);
  REQUIRE(r.code == 0);
  const auto rows = read_csv(dir / "out" / "h_curve.csv");
  REQUIRE(rows.size() == 6);
  CHECK(rows[0][0] == "q");
  CHECK(rows[0][1] == "h");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double q = std::stod(rows[i][0]);
    CHECK(std::abs(std::stod(rows[i][1]) - (1.0 - q) * std::log(2.0)) <= 2e-2);
  }
  CHECK(fs::exists(dir / "out" / "legendre.csv"));
  CHECK(fs::exists(dir / "out" / "endpoints.csv"));
}

TEST_CASE("verify-gibbs reports small residuals") {
  const fs::path dir = scratch("gibbs");
  const Result r = run_cli(dir, "verify-gibbs",
                           R"({"alphabet": 3, "measure": {"kind": "markov",
                               "P": [[0.2, 0.5, 0.3], [0.6, 0.1, 0.3], [0.25, 0.25, 0.5]]}})");
  REQUIRE(r.code == 0);
  const auto rows = read_csv(dir / "out" / "gibbs.csv");
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][4]) <= 1e-6);
}

TEST_CASE("doubling reports an unbounded measure without failing") {
  const fs::path dir = scratch("doubling");
  const Result r = run_cli(dir, "doubling", R"({"alphabet": 2, "measure": {"kind": "bernoulli", "p": [1, 0]},
                                               "doubling": {"k": 1, "n_max": 6}})");
  REQUIRE(r.code == 0);
  const auto rows = read_csv(dir / "out" / "doubling.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][2] == "inf");
  CHECK(rows[1][3] == "unbounded");
}

TEST_CASE("configuration errors exit with 2 and name the problem") {
  const fs::path dir = scratch("errors");
  Result r = run_cli(dir, "spectrum", R"({"alphabet": 2, "measure": {"kind": "markov", "P": [[0.5, 0.6], [0.5, 0.5]]}})");
  CHECK(r.code == 2);
  CHECK(r.err.find("row 0") != std::string::npos);

  r = run_cli(dir, "spectrum", R"({"alphabet": 2, "transitions": [[1, 1], [1, 0]],
                                   "measure": {"kind": "gibbs", "psi": {"00": 0.1, "01": 0.2}}})");
  CHECK(r.code == 2);
  CHECK(r.err.find("'10'") != std::string::npos);

  r = run_cli(dir, "spectrum", "{not json");
  CHECK(r.code == 2);
  r = run_cli(dir, "no-such-command", kFair);
  CHECK(r.code == 2);
  r = run_cli(dir, "spectrum", R"({"alphabet": 2, "measure": {"kind": "bernoulli", "p": [0.5, 0.5]},
                                   "q_grid": [1, 0]})");
  CHECK(r.code == 2);
  CHECK(r.err.find("q_grid") != std::string::npos);
  r = run_cli(dir, "spectrum", kFair, "--threads notanumber");
  CHECK(r.code == 2);
}

TEST_CASE("numeric failures exit with 1") {
  const fs::path dir = scratch("numeric");
  const Result r = run_cli(dir, "level-spectrum", R"({"alphabet": 2, "measure": {"kind": "bernoulli", "p": [0.25, 0.75]},
                                                     "n": 30})");
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const std::string cfg = R"({"alphabet": 2, "measure": {"kind": "bernoulli", "p": [0.25, 0.75]},
                             "local": {"n_max": 40, "samples": 12}, "seed": 9})";
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  REQUIRE(run_cli(a, "local", cfg, "--threads 1").code == 0);
  REQUIRE(run_cli(b, "local", cfg, "--threads 4").code == 0);
  CHECK(slurp(a / "out" / "local.csv") == slurp(b / "out" / "local.csv"));
  const fs::path c = scratch("det_c");
  REQUIRE(run_cli(c, "local", cfg, "--seed 10").code == 0);
  CHECK(slurp(a / "out" / "local.csv") != slurp(c / "out" / "local.csv"));

  const fs::path s1 = scratch("det_s1");
  const fs::path s2 = scratch("det_s2");
  REQUIRE(run_cli(s1, "spectrum", kFair, "--threads 1").code == 0);
  REQUIRE(run_cli(s2, "spectrum", kFair, "--threads 3").code == 0);
  for (const char* f : {"h_curve.csv", "legendre.csv", "endpoints.csv"})
    CHECK(slurp(s1 / "out" / f) == slurp(s2 / "out" / f));
}

TEST_CASE("premeasure, entropy and level-spectrum commands run") {
  const fs::path dir = scratch("misc");
  const std::string cfg = R"({"alphabet": 2, "transitions": [[1, 1], [1, 0]],
                             "measure": {"kind": "markov", "P": [[0.6, 0.4], [1, 0]]},
                             "set": ["00", "101"], "q": 0.5, "t": 0.3, "N": 2, "D": 6,
                             "schedule": [4, 8], "n": 10, "identity_q": [0, 1]})";
  CHECK(run_cli(dir, "premeasure", cfg).code == 0);
  CHECK(read_csv(dir / "out" / "premeasure.csv").size() == 4);
  CHECK(run_cli(dir, "entropy", cfg).code == 0);
  CHECK(read_csv(dir / "out" / "entropy.csv").size() == 4);
  CHECK(run_cli(dir, "level-spectrum", cfg).code == 0);
  CHECK(read_csv(dir / "out" / "level_identity.csv").size() == 3);
}
