#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spinrel/closedform.hpp"

#ifndef SPINREL_CLI_BIN
#error "SPINREL_CLI_BIN must point at the command line binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "spinrel_cli_tests";
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path dir = scratch_dir();
  const fs::path out_file = dir / "stdout.txt";
  const fs::path err_file = dir / "stderr.txt";
  const std::string cmd = std::string(SPINREL_CLI_BIN) + " " + args + " > " +
                          out_file.string() + " 2> " + err_file.string();
  const int status = std::system(cmd.c_str());
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  int code = -1;
  if (status != -1 && WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, slurp(out_file), slurp(err_file)};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char ch : line) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(cur);
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("compare command reproduces the analytic curve numerically") {
  const fs::path out = scratch_dir() / "cmp.csv";
  const RunResult r = run_cli("compare --j 0.5 --gamma1 0.2 --gamma2 0.5 --t-max 2 --dt 1e-3 --out " +
                              out.string());
  REQUIRE(r.exit_code == 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 2002);
  CHECK(rows[0] == std::vector<std::string>{"t", "R_analytic", "h_analytic", "R_numeric",
                                            "h_numeric"});
  double supR = 0.0;
  double suph = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    supR = std::max(supR, std::abs(std::stod(rows[i][1]) - std::stod(rows[i][3])));
    if (!rows[i][2].empty() && !rows[i][4].empty()) {
      suph = std::max(suph, std::abs(std::stod(rows[i][2]) - std::stod(rows[i][4])));
    }
  }
  CHECK(supR <= 1e-6);
  CHECK(suph <= 1e-5);
}

TEST_CASE("CSV output is deterministic byte for byte") {
  const fs::path a = scratch_dir() / "det_a.csv";
  const fs::path b = scratch_dir() / "det_b.csv";
  REQUIRE(run_cli("fpt-estimate --j 0.5 --gamma1 0.2 --gamma2 0.5 --shots 2000 --seed 11 "
                  "--t-max 20 --out " + a.string()).exit_code == 0);
  REQUIRE(run_cli("fpt-estimate --j 0.5 --gamma1 0.2 --gamma2 0.5 --shots 2000 --seed 11 "
                  "--t-max 20 --out " + b.string()).exit_code == 0);
  CHECK(file_bytes(a) == file_bytes(b));
}

TEST_CASE("analytic-only runs leave numeric columns empty and apply the cutoff") {
  const fs::path out = scratch_dir() / "ana.csv";
  REQUIRE(run_cli("analytic --j 0.5 --gamma1 0.2 --gamma2 0.5 --t-max 35 --dt 0.05 --out " +
                  out.string()).exit_code == 0);
  const auto rows = read_csv(out);
  bool saw_cutoff = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][3].empty());
    CHECK(rows[i][4].empty());
    const double R = std::stod(rows[i][1]);
    if (R <= 1e-4) {
      CHECK(rows[i][2].empty());
      saw_cutoff = true;
    } else {
      CHECK(!rows[i][2].empty());
    }
  }
  CHECK(saw_cutoff);
  // 17 significant digits round-trip exactly
  const double R1 = std::stod(rows[21][1]);
  CHECK(R1 == spinrel::reliability_analytic({0.5, 0.2, 0.5}, std::stod(rows[21][0])));
}

TEST_CASE("phasemap command emits only known classes") {
  const fs::path out = scratch_dir() / "map.csv";
  REQUIRE(run_cli("phasemap --j 0.1 --gmin 0.05 --gmax 3.0 --n 20 --out " + out.string())
              .exit_code == 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 401);
  CHECK(rows[0] == std::vector<std::string>{"gamma1", "gamma2", "regime", "extrema_count"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::string& cls = rows[i][3];
    CHECK((cls == "0" || cls == "2" || cls == "-1"));
    const std::string& reg = rows[i][2];
    CHECK((reg == "underdamped" || reg == "overdamped" || reg == "critical"));
  }
}

TEST_CASE("critical-x prints the transition point") {
  const RunResult r = run_cli("critical-x");
  REQUIRE(r.exit_code == 0);
  const auto pos = r.out.find("x_star = ");
  REQUIRE(pos != std::string::npos);
  const double x = std::stod(r.out.substr(pos + 9));
  CHECK(std::abs(x - 0.934756) <= 1e-3);
}

TEST_CASE("fpt-sample bins are within range and censoring is marked") {
  const fs::path out = scratch_dir() / "sample.csv";
  REQUIRE(run_cli("fpt-sample --j 0.5 --gamma1 0.2 --gamma2 0.5 --shots 500 --seed 3 "
                  "--t-max 10 --dt 0.5 --out " + out.string()).exit_code == 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 501);
  CHECK(rows[0] == std::vector<std::string>{"shot", "bin", "censored"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][2] == "1") {
      CHECK(rows[i][1].empty());
    } else {
      const int bin = std::stoi(rows[i][1]);
      CHECK(bin >= 1);
      CHECK(bin <= 20);
    }
  }
}

TEST_CASE("usage and validation failures exit with code 2") {
  CHECK(run_cli("compare --j 0.5 --gamma1 0.2").exit_code == 2);          // missing flags
  CHECK(run_cli("compare --bogus 1").exit_code == 2);                     // unknown flag
  CHECK(run_cli("nonsense").exit_code == 2);                              // unknown command
  CHECK(run_cli("").exit_code == 2);                                      // no subcommand
  const RunResult r = run_cli("analytic --j 0.5 --gamma1 -1 --gamma2 0.5 --out /tmp/x.csv");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("gamma1") != std::string::npos);
  // unwritable output path reports the path
  const RunResult w = run_cli(
      "analytic --j 0.5 --gamma1 0.2 --gamma2 0.5 --out /nonexistent_dir_zz/x.csv");
  CHECK(w.exit_code == 2);
  CHECK(w.err.find("/nonexistent_dir_zz/x.csv") != std::string::npos);
}

TEST_CASE("config file supplies values and flags take precedence") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# reference underdamped set\n";
    f << "j = 0.5\n";
    f << "gamma1 = 0.2\n";
    f << "gamma2 = 0.5\n";
    f << "seed = 42\n";
    f << "shots = 300\n";
    f << "t-max = 5\n";
  }
  const fs::path a = dir / "cfg_a.csv";
  const fs::path b = dir / "cfg_b.csv";
  const fs::path c = dir / "cfg_c.csv";
  REQUIRE(run_cli("fpt-sample --config " + cfg.string() + " --out " + a.string()).exit_code == 0);
  // same run fully from flags
  REQUIRE(run_cli("fpt-sample --j 0.5 --gamma1 0.2 --gamma2 0.5 --seed 42 --shots 300 "
                  "--t-max 5 --out " + b.string()).exit_code == 0);
  CHECK(file_bytes(a) == file_bytes(b));
  // flag overrides the file seed
  REQUIRE(run_cli("fpt-sample --config " + cfg.string() + " --seed 7 --out " + c.string())
              .exit_code == 0);
  CHECK(file_bytes(a) != file_bytes(c));
}

TEST_CASE("empty config file plus full flags works") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "empty.cfg";
  std::ofstream(cfg).put('\n');
  const fs::path out = dir / "empty_cfg.csv";
  CHECK(run_cli("analytic --config " + cfg.string() +
                " --j 0.5 --gamma1 0.2 --gamma2 0.5 --t-max 1 --dt 0.1 --out " + out.string())
            .exit_code == 0);
}

TEST_CASE("config file errors cite key and line") {
  const fs::path dir = scratch_dir();
  SUBCASE("unknown key") {
    const fs::path cfg = dir / "bad_key.cfg";
    {
      std::ofstream f(cfg);
      f << "j = 0.5\n";
      f << "flux = 3\n";
    }
    const RunResult r = run_cli("analytic --config " + cfg.string() +
                                " --gamma1 0.2 --gamma2 0.5 --out " + (dir / "x.csv").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("flux") != std::string::npos);
    CHECK(r.err.find(":2") != std::string::npos);
  }
  SUBCASE("malformed line") {
    const fs::path cfg = dir / "bad_line.cfg";
    {
      std::ofstream f(cfg);
      f << "j = 0.5\n";
      f << "gamma1\n";
    }
    const RunResult r = run_cli("analytic --config " + cfg.string() +
                                " --gamma1 0.2 --gamma2 0.5 --out " + (dir / "x.csv").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find(":2") != std::string::npos);
  }
  SUBCASE("missing file") {
    const RunResult r = run_cli("analytic --config " + (dir / "missing.cfg").string() +
                                " --j 0.5 --gamma1 0.2 --gamma2 0.5 --out " +
                                (dir / "x.csv").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("missing.cfg") != std::string::npos);
  }
}

TEST_CASE("fpt-estimate emits the documented schema") {
  const fs::path out = scratch_dir() / "est.csv";
  REQUIRE(run_cli("fpt-estimate --j 0.5 --gamma1 0.2 --gamma2 0.5 --shots 20000 --seed 5 "
                  "--t-max 20 --out " + out.string()).exit_code == 0);
  const auto rows = read_csv(out);
  CHECK(rows[0] ==
        std::vector<std::string>{"t_k", "n_risk", "n_k", "R_hat", "h_hat", "var_theory"});
  REQUIRE(rows.size() == 202);  // k = 0..200 plus header
  CHECK(rows[1][3] == "1");     // R_hat(0) = 1
  // final row carries only the survival value
  CHECK(rows.back()[2].empty());
  CHECK(rows.back()[4].empty());
  CHECK(rows.back()[5].empty());
}
