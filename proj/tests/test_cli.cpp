#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "zdflp/solution.hpp"

namespace fs = std::filesystem;
using zdflp_test::fixture_path;

namespace {

struct CliRun {
  int exit_code = -1;
  std::string output;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "zdflp_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliRun run_cli(const std::string& args) {
  const fs::path log = scratch_dir() / "out.log";
  const std::string cmd =
      std::string(ZDFLP_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  CliRun run;
  run.exit_code = rc < 0 ? rc : WEXITSTATUS(rc);
  std::ifstream in(log);
  std::ostringstream buf;
  buf << in.rdbuf();
  run.output = buf.str();
  return run;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("validate accepts the bundled fixtures and rejects garbage") {
  CHECK(run_cli("validate --instance " + fixture_path("tiny_pair.json")).exit_code == 0);

  const fs::path broken = scratch_dir() / "broken.json";
  std::ofstream(broken) << "{\"facility\": {\"len_x\": -1}}";
  const CliRun bad = run_cli("validate --instance " + broken.string());
  CHECK(bad.exit_code == 2);

  const CliRun missing = run_cli("validate --instance /nonexistent.json");
  CHECK(missing.exit_code == 2);

  const fs::path invalid = scratch_dir() / "invalid.json";
  std::ofstream(invalid) << R"({
    "facility": {"len_x": 10, "len_y": 10},
    "periods": 1,
    "zones": {"count": 1},
    "departments": [
      {"id": "bad", "periods": [{"t": 1, "area": 4, "min_side": [3, 3], "max_side": [2, 2]}]}
    ]
  })";
  const CliRun inv = run_cli("validate --instance " + invalid.string());
  CHECK(inv.exit_code == 2);
  CHECK(inv.output.find("side-bounds") != std::string::npos);
}

TEST_CASE("exact solve writes a solution and prints the breakdown") {
  const fs::path out = scratch_dir() / "single.sol.json";
  const CliRun run = run_cli("solve --instance " + fixture_path("tiny_single.json") +
                             " --method exact --out " + out.string());
  REQUIRE(run.exit_code == 0);
  CHECK(run.output.find("total TC") != std::string::npos);
  CHECK(run.output.find("status: optimal") != std::string::npos);
  const zdflp::LayoutSolution sol = zdflp::load_solution_file(out.string());
  CHECK(sol.costs.total == 0.0);
}

TEST_CASE("unknown method and missing instance exit with the input code") {
  CHECK(run_cli("solve --instance " + fixture_path("tiny_single.json") +
                " --method annealing")
            .exit_code == 2);
  CHECK(run_cli("solve --instance /nonexistent.json --method exact").exit_code == 2);
}

TEST_CASE("vns solve with a fixed seed is byte-reproducible") {
  const fs::path sol1 = scratch_dir() / "r1.sol.json";
  const fs::path sol2 = scratch_dir() / "r2.sol.json";
  const fs::path tr1 = scratch_dir() / "r1.trace";
  const fs::path tr2 = scratch_dir() / "r2.trace";
  const std::string base = "solve --instance " + fixture_path("tiny_pair.json") +
                           " --method vns --seed 7 --gmax 2 --kappa 1";
  REQUIRE(run_cli(base + " --out " + sol1.string() + " --trace " + tr1.string()).exit_code ==
          0);
  REQUIRE(run_cli(base + " --out " + sol2.string() + " --trace " + tr2.string()).exit_code ==
          0);
  CHECK(slurp(sol1) == slurp(sol2));
  CHECK(slurp(tr1) == slurp(tr2));
  CHECK_FALSE(slurp(tr1).empty());
}

TEST_CASE("evaluate accepts a solution produced by solve") {
  const fs::path out = scratch_dir() / "pair.sol.json";
  REQUIRE(run_cli("solve --instance " + fixture_path("tiny_pair.json") +
                  " --method exact --out " + out.string())
              .exit_code == 0);
  const CliRun eval = run_cli("evaluate --instance " + fixture_path("tiny_pair.json") +
                              " --solution " + out.string());
  CHECK(eval.exit_code == 0);
  CHECK(eval.output.find("feasible: yes") != std::string::npos);

  // corrupt the geometry and expect a rejection
  zdflp::LayoutSolution sol = zdflp::load_solution_file(out.string());
  for (auto& [id, c] : sol.periods[0].dept_center) c[0] += 20.0;
  const fs::path bad = scratch_dir() / "pair.bad.json";
  std::ofstream(bad) << zdflp::serialize_solution(sol);
  const CliRun reject = run_cli("evaluate --instance " + fixture_path("tiny_pair.json") +
                                " --solution " + bad.string());
  CHECK(reject.exit_code == 2);
  CHECK(reject.output.find("feasible: no") != std::string::npos);
}

TEST_CASE("render emits one svg per period") {
  const fs::path out = scratch_dir() / "z2p.sol.json";
  REQUIRE(run_cli("solve --instance " + fixture_path("tiny_zones2p.json") +
                  " --method exact --out " + out.string())
              .exit_code == 0);
  const fs::path prefix = scratch_dir() / "layout";
  const CliRun render =
      run_cli("render --solution " + out.string() + " --out " + prefix.string());
  REQUIRE(render.exit_code == 0);
  const std::string svg1 = slurp(prefix.string() + "_t1.svg");
  const std::string svg2 = slurp(prefix.string() + "_t2.svg");
  CHECK(svg1.find("<svg") == 0);
  CHECK(svg2.find("<svg") == 0);
  // period 2 contains the replacement annotation c -> b
  CHECK(svg2.find("c \xE2\x86\x92 b") != std::string::npos);
  CHECK(run_cli("render --solution /nonexistent.json").exit_code == 2);
}

TEST_CASE("bench summarizes replications and handles an empty directory") {
  const fs::path dir = scratch_dir() / "bench";
  fs::create_directories(dir);
  fs::copy_file(fixture_path("tiny_single.json"), dir / "tiny_single.json",
                fs::copy_options::overwrite_existing);
  const fs::path out = scratch_dir() / "bench.json";
  const CliRun run = run_cli("bench --instances " + dir.string() +
                             " --replications 1 --gmax 1 --out " + out.string());
  REQUIRE(run.exit_code == 0);
  CHECK(run.output.find("tiny_single") != std::string::npos);
  const std::string doc = slurp(out);
  CHECK(doc.find("\"best\": 0.0") != std::string::npos);
  CHECK(doc.find("\"average\": 0.0") != std::string::npos);

  const fs::path empty = scratch_dir() / "empty";
  fs::create_directories(empty);
  const CliRun none = run_cli("bench --instances " + empty.string());
  CHECK(none.exit_code == 0);
  CHECK(none.output.find("warning") != std::string::npos);
}
