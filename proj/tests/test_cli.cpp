#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qk/csv.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#error "the CLI tests drive the binary through a POSIX shell"
#endif
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

std::string cli_binary() {
  const char* env = std::getenv("QK_CLI_BINARY");
  REQUIRE_MESSAGE(env != nullptr,
                  "QK_CLI_BINARY must point at the command-line binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const fs::path& scratch) {
  fs::create_directories(scratch);
  const fs::path out = scratch / "stdout.txt";
  const fs::path err = scratch / "stderr.txt";
  const std::string cmd = cli_binary() + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qk_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream os(path);
  os << body;
}

// value following "key:" in the report, as text
std::string report_value(const std::string& report, const std::string& key) {
  std::istringstream ss(report);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind(key + ":", 0) == 0) {
      std::string v = line.substr(key.size() + 1);
      const std::size_t at = v.find_first_not_of(" \t");
      return at == std::string::npos ? "" : v.substr(at);
    }
  }
  return "";
}

int find_row(const qk::CsvTable& t, const std::string& col_name,
             const std::string& value, int start = 0) {
  const int c = t.column(col_name);
  if (c < 0) return -1;
  for (std::size_t r = std::size_t(start); r < t.rows.size(); ++r)
    if (t.rows[r][std::size_t(c)] == value) return int(r);
  return -1;
}

}  // namespace

TEST_CASE("model-info reports the oracle interaction energy") {
  const fs::path dir = fresh_dir("model_info");
  write_file(dir / "cfg", "n_sites = 2\n");
  const RunResult r =
      run_cli("model-info --config " + (dir / "cfg").string(), dir);
  REQUIRE(r.exit_code == 0);
  CHECK(report_value(r.out, "n_sites") == "2");
  CHECK(report_value(r.out, "field_qubits_per_link") == "1");
  CHECK(report_value(r.out, "sector_dimension") == "2");
  const double e_int = std::stod(report_value(r.out, "interaction_energy"));
  CHECK(e_int == doctest::Approx(0.061552812808830518).epsilon(1e-6));
}

TEST_CASE("model-info: no hopping means no interaction energy") {
  const fs::path dir = fresh_dir("model_info_x0");
  write_file(dir / "cfg", "n_sites = 4\nx = 0\n");
  const RunResult r =
      run_cli("model-info --config " + (dir / "cfg").string(), dir);
  REQUIRE(r.exit_code == 0);
  const double e_int = std::stod(report_value(r.out, "interaction_energy"));
  CHECK(std::abs(e_int) <= 1e-12);
}

TEST_CASE("unknown config keys exit with the config error code") {
  const fs::path dir = fresh_dir("bad_key");
  write_file(dir / "cfg", "n_sites = 4\nbogus_key = 1\n");
  const RunResult r =
      run_cli("model-info --config " + (dir / "cfg").string(), dir);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("bogus_key") != std::string::npos);
}

TEST_CASE("malformed values exit with the config error code") {
  const fs::path dir = fresh_dir("bad_value");
  write_file(dir / "cfg", "n_sites = quite_a_few\n");
  const RunResult r =
      run_cli("model-info --config " + (dir / "cfg").string(), dir);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("n_sites") != std::string::npos);
}

TEST_CASE("sweep emits the full grid and is reproducible byte for byte") {
  const fs::path dir = fresh_dir("sweep_grid");
  const std::string cfg =
      "n_sites = 4\nsolver = tqse\nd_list = 2, 3\n"
      "budgets = 1e6, 1e7\ninstances = 3\nseed = 77\n";
  write_file(dir / "cfg", cfg);

  const std::string base =
      "sweep --config " + (dir / "cfg").string() + " --out ";
  const RunResult r1 = run_cli(base + (dir / "a").string(), dir / "log1");
  REQUIRE(r1.exit_code == 0);

  const qk::CsvTable t = qk::read_csv((dir / "a" / "results.csv").string());
  CHECK(t.meta.at("schema") == "results-v1");
  CHECK(t.meta.at("seed") == "77");
  CHECK(t.meta.at("digest").size() == 16);
  REQUIRE(t.rows.size() == 12);  // 2 budgets x 2 D x 3 instances

  const int c_solver = t.column("solver");
  const int c_status = t.column("status");
  const int c_frac = t.column("frac_error");
  REQUIRE(c_solver >= 0);
  REQUIRE(c_status >= 0);
  REQUIRE(c_frac >= 0);
  int ok_rows = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i][std::size_t(c_solver)] == "tqse");
    if (t.rows[i][std::size_t(c_status)] == "ok") {
      ++ok_rows;
      CHECK(t.number(i, c_frac) >= 0.0);
    }
  }
  CHECK(ok_rows > 0);

  CHECK(fs::exists(dir / "a" / "moments.csv"));
  CHECK(fs::exists(dir / "a" / "noise.csv"));
  CHECK(fs::exists(dir / "a" / "manifest.json"));

  // identical config => identical bytes, independent of the worker count
  const RunResult r2 = run_cli(base + (dir / "b").string(), dir / "log2");
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(dir / "a" / "results.csv") == slurp(dir / "b" / "results.csv"));

  const RunResult r3 = run_cli(
      base + (dir / "c").string() + " --workers 4", dir / "log3");
  REQUIRE(r3.exit_code == 0);
  CHECK(slurp(dir / "a" / "results.csv") == slurp(dir / "c" / "results.csv"));
}

TEST_CASE("a different seed changes the digest and the noise draws") {
  const fs::path dir = fresh_dir("sweep_seed");
  write_file(dir / "cfg",
             "n_sites = 4\nsolver = tqse\nd_list = 2\n"
             "budgets = 1e6\ninstances = 2\nseed = 5\n");
  const std::string base =
      "sweep --config " + (dir / "cfg").string() + " --out ";
  const RunResult r1 = run_cli(base + (dir / "a").string(), dir / "log1");
  const RunResult r2 = run_cli(
      base + (dir / "b").string() + " --seed 6", dir / "log2");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  const qk::CsvTable a = qk::read_csv((dir / "a" / "results.csv").string());
  const qk::CsvTable b = qk::read_csv((dir / "b" / "results.csv").string());
  CHECK(a.meta.at("digest") != b.meta.at("digest"));
  CHECK(a.number(0, a.column("energy")) != b.number(0, b.column("energy")));
}

TEST_CASE("the noiseless flag collapses the budget axis") {
  const fs::path dir = fresh_dir("sweep_noiseless");
  write_file(dir / "cfg",
             "n_sites = 4\nsolver = qse\nd_list = 2, 3, 4\n"
             "budgets = 1e6, 1e8\ninstances = 50\n");
  const RunResult r = run_cli("sweep --config " + (dir / "cfg").string() +
                                  " --noiseless --out " + (dir / "o").string(),
                              dir / "log");
  REQUIRE(r.exit_code == 0);
  const qk::CsvTable t = qk::read_csv((dir / "o" / "results.csv").string());
  REQUIRE(t.rows.size() == 3);  // one row per D, single exact instance
  const int c_budget = t.column("budget");
  const int c_status = t.column("status");
  double prev = 1e300;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.number(i, c_budget) == 0.0);
    CHECK(t.rows[i][std::size_t(c_status)] == "ok");
    const double frac = t.number(i, t.column("frac_error"));
    CHECK(frac < prev);  // noiseless error falls monotonically with D
    prev = frac;
  }
}

TEST_CASE("resources table carries the closed-form spot values") {
  const fs::path dir = fresh_dir("resources");
  write_file(dir / "cfg", "n_grid = 4\n");
  const RunResult r =
      run_cli("resources --config " + (dir / "cfg").string() + " --out " +
                  (dir / "o").string(),
              dir / "log");
  REQUIRE(r.exit_code == 0);

  const qk::CsvTable t = qk::read_csv((dir / "o" / "resources.csv").string());
  CHECK(t.meta.at("schema") == "resources-v1");

  const int u_row = find_row(t, "construction", "U");
  REQUIRE(u_row >= 0);
  CHECK(t.rows[u_row][std::size_t(t.column("policy"))] == "G_tilde");
  CHECK(t.number(u_row, t.column("t")) == 60.0);
  CHECK(t.number(u_row, t.column("cnot")) == 80.0);

  const int p_row = find_row(t, "construction", "projector_rotation");
  REQUIRE(p_row >= 0);
  CHECK(t.number(p_row, t.column("t")) == 1312.0);

  const int g_row = find_row(t, "construction", "G");
  const int gs_row = find_row(t, "construction", "G_summation");
  REQUIRE(g_row >= 0);
  REQUIRE(gs_row >= 0);
  CHECK(t.number(g_row, t.column("t")) == t.number(gs_row, t.column("t")));

  const qk::CsvTable rt = qk::read_csv((dir / "o" / "runtimes.csv").string());
  REQUIRE(rt.rows.size() == 4);  // one row per processor at N=4
  const int step_row = find_row(t, "construction", "step");
  REQUIRE(step_row >= 0);
  const double step_cnot = t.number(step_row, t.column("cnot"));
  const int eagle = find_row(rt, "processor", "Eagle r3");
  REQUIRE(eagle >= 0);
  CHECK(rt.number(eagle, rt.column("seconds_serial")) ==
        doctest::Approx(step_cnot * 636e-9).epsilon(1e-12));
  const int h2 = find_row(rt, "processor", "H2-1");
  REQUIRE(h2 >= 0);
  CHECK(rt.rows[h2][std::size_t(rt.column("fraction_t1"))].empty());
}

TEST_CASE("fit recovers a synthetic power law and prices the campaign") {
  const fs::path dir = fresh_dir("fit_roundtrip");
  // synthetic sweep: err = 10 / sqrt(calls), exact power law
  {
    std::ofstream os(dir / "results.csv");
    qk::CsvWriter w(os, "results-v1", 0, 1,
                    {"N", "mu", "x", "D_or_Dmax", "budget", "seed", "solver",
                     "energy", "frac_error", "status", "partitions"});
    for (double calls : {1e4, 1e5, 1e6, 1e7, 1e8}) {
      const double err = 10.0 / std::sqrt(calls);
      w.row({"4", "1.5", "0.5", "3", qk::csv_double(calls), "1", "pqse",
             "-1", qk::csv_double(err), "ok", "2;2"});
    }
  }
  write_file(dir / "cfg", "targets = 1e-4\nfit_kind = loglog_in_calls\n");
  const RunResult r = run_cli(
      "fit --config " + (dir / "cfg").string() + " --out " +
          (dir / "o").string() + " " + (dir / "results.csv").string(),
      dir / "log");
  REQUIRE(r.exit_code == 0);

  const qk::CsvTable f = qk::read_csv((dir / "o" / "fits.csv").string());
  REQUIRE(f.rows.size() == 1);
  CHECK(f.number(0, f.column("chi")) == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(f.number(0, f.column("r_squared")) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // err = 10/sqrt(M) hits 1e-4 at M = (10/1e-4)^2 = 1e10
  CHECK(f.number(0, f.column("requirement")) ==
        doctest::Approx(1e10).epsilon(1e-6));

  const qk::CsvTable c = qk::read_csv((dir / "o" / "campaign.csv").string());
  REQUIRE(c.rows.size() == 1);
  CHECK(c.number(0, c.column("required_calls")) ==
        doctest::Approx(1e10).epsilon(1e-6));
  CHECK(c.number(0, c.column("t")) > 0.0);
}

TEST_CASE("fit without inputs is a config error; unreadable input is not") {
  const fs::path dir = fresh_dir("fit_errors");
  write_file(dir / "cfg", "targets = 1e-4\n");
  const RunResult none =
      run_cli("fit --config " + (dir / "cfg").string(), dir / "log1");
  CHECK(none.exit_code == 2);
  const RunResult missing = run_cli(
      "fit --config " + (dir / "cfg").string() + " " +
          (dir / "no_such.csv").string(),
      dir / "log2");
  CHECK(missing.exit_code == 4);
}

TEST_CASE("site counts beyond the memory cap exit with the capacity code") {
  const fs::path dir = fresh_dir("capacity");
  write_file(dir / "cfg", "n_sites = 30\nd_list = 2\nbudgets = 1e6\n");
  const RunResult r = run_cli(
      "sweep --config " + (dir / "cfg").string() + " --out " +
          (dir / "o").string(),
      dir / "log");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("cap") != std::string::npos);
}

TEST_CASE("environment variables override config file values") {
  const fs::path dir = fresh_dir("env_override");
  write_file(dir / "cfg", "n_sites = 2\n");
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = "QK_N_SITES=4 " + cli_binary() +
                          " model-info --config " + (dir / "cfg").string() +
                          " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  REQUIRE(WEXITSTATUS(status) == 0);
  CHECK(report_value(slurp(out), "n_sites") == "4");
}
