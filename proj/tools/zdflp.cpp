// zdflp: zone-based dynamic facility layout solver suite.
//
// Subcommands: validate, solve (exact MILP or MIP-VNS), evaluate, render, bench.
// Exit codes: 0 success, 2 input/validation error, 3 solver error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zdflp/backend.hpp"
#include "zdflp/evaluate.hpp"
#include "zdflp/instance.hpp"
#include "zdflp/model.hpp"
#include "zdflp/mps.hpp"
#include "zdflp/render.hpp"
#include "zdflp/solution.hpp"
#include "zdflp/vns.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

void print_breakdown(const zdflp::CostBreakdown& costs) {
  std::cout << "material handling : " << zdflp::format_double(costs.material) << "\n"
            << "fixed relayout    : " << zdflp::format_double(costs.fixed_relayout) << "\n"
            << "variable relayout : " << zdflp::format_double(costs.variable_relayout) << "\n"
            << "zone boundary     : " << zdflp::format_double(costs.zone_boundary) << "\n"
            << "total TC          : " << zdflp::format_double(costs.total) << "\n";
}

int report_input_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kExitInput;
}

struct SolveArgs {
  std::string instance_path;
  std::string method = "exact";
  std::string out_path;
  std::string trace_path;
  std::string mps_path;
  std::uint64_t seed = 1;
  int gmax = 50;
  int kappa = 3;
  int delta = 0;  // 0 = keep instance value
  double time_limit = 0.0;
  double sub_time_limit = 10.0;
  bool trace_timing = false;
};

int run_solve(const SolveArgs& args) {
  zdflp::Instance inst;
  try {
    inst = zdflp::load_instance_file(args.instance_path);
    if (args.delta > 0) {
      inst.delta = args.delta;
      auto issues = zdflp::validate(inst);
      if (!issues.empty()) throw zdflp::ValidationError(std::move(issues));
    }
  } catch (const std::exception& e) {
    return report_input_error(e);
  }

  try {
    zdflp::LayoutSolution sol;
    zdflp::SearchTrace trace;
    if (args.method == "exact") {
      const zdflp::ModelSpec model = zdflp::build_full_model(inst);
      if (!args.mps_path.empty()) write_text_file(args.mps_path, zdflp::write_mps(model));
      zdflp::SolveLimits limits;
      if (args.time_limit > 0) limits.time_limit = args.time_limit;
      const zdflp::SolveResult result = zdflp::solve(model, limits);
      if (!result.has_solution()) {
        std::cerr << "solver: " << zdflp::solve_status_name(result.status) << " "
                  << result.diagnostics << "\n";
        return kExitSolver;
      }
      std::cout << "status: " << zdflp::solve_status_name(result.status) << "\n";
      sol = zdflp::decode(model, result, inst);
    } else if (args.method == "vns") {
      zdflp::SearchConfig cfg;
      cfg.g_max = args.gmax;
      cfg.kappa = args.kappa;
      cfg.seed = args.seed;
      cfg.subproblem_time_limit = args.sub_time_limit;
      if (args.time_limit > 0) cfg.phase1_time_limit = args.time_limit;
      if (!args.mps_path.empty())
        write_text_file(args.mps_path, zdflp::write_mps(zdflp::build_full_model(inst)));
      const zdflp::LayoutSolution start = zdflp::phase1(inst, cfg);
      auto [best, tr] = zdflp::phase2(inst, start, cfg);
      sol = std::move(best);
      trace = std::move(tr);
    } else {
      std::cerr << "error: unknown method '" << args.method << "' (use exact or vns)\n";
      return kExitInput;
    }

    const auto violations = zdflp::check(sol, inst);
    if (!violations.empty()) {
      std::cerr << "internal error: solution fails feasibility check:\n";
      for (const auto& v : violations)
        std::cerr << "  [" << v.code << "] " << v.where << " by "
                  << zdflp::format_double(v.magnitude) << "\n";
      return kExitSolver;
    }

    if (!args.out_path.empty()) write_text_file(args.out_path, zdflp::serialize_solution(sol));
    if (!args.trace_path.empty())
      write_text_file(args.trace_path, zdflp::serialize_trace(trace, args.trace_timing));
    print_breakdown(sol.costs);
    return kExitOk;
  } catch (const zdflp::ValidationError& e) {
    return report_input_error(e);
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
}

struct BenchRow {
  std::string name;
  bool failed = false;
  double best = 0.0;
  double average = 0.0;
  double avg_seconds = 0.0;
};

int run_bench(const std::string& dir, int replications, int gmax, int kappa,
              double sub_time_limit, const std::string& out_path) {
  std::vector<std::filesystem::path> files;
  try {
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
  } catch (const std::exception& e) {
    return report_input_error(e);
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "warning: no instance files in '" << dir << "'\n";
    return kExitOk;
  }

  std::vector<BenchRow> rows;
  for (const auto& file : files) {
    BenchRow row;
    row.name = file.stem().string();
    try {
      const zdflp::Instance inst = zdflp::load_instance_file(file.string());
      std::vector<double> tcs, secs;
      for (int rep = 1; rep <= replications; ++rep) {
        zdflp::SearchConfig cfg;
        cfg.g_max = gmax;
        cfg.kappa = kappa;
        cfg.subproblem_time_limit = sub_time_limit;
        cfg.seed = static_cast<std::uint64_t>(rep);
        const auto t0 = std::chrono::steady_clock::now();
        const zdflp::LayoutSolution start = zdflp::phase1(inst, cfg);
        auto [best, trace] = zdflp::phase2(inst, start, cfg);
        secs.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        tcs.push_back(best.costs.total);
      }
      row.best = *std::min_element(tcs.begin(), tcs.end());
      row.average = std::accumulate(tcs.begin(), tcs.end(), 0.0) /
                    static_cast<double>(tcs.size());
      row.avg_seconds = std::accumulate(secs.begin(), secs.end(), 0.0) /
                        static_cast<double>(secs.size());
    } catch (const std::exception& e) {
      row.failed = true;
      std::cerr << "instance '" << row.name << "' failed: " << e.what() << "\n";
    }
    rows.push_back(std::move(row));
  }

  std::cout << std::left << std::setw(28) << "instance" << std::right << std::setw(14)
            << "best" << std::setw(14) << "average" << std::setw(12) << "avg sec"
            << "\n";
  nlohmann::json doc = nlohmann::json::array();
  bool any_failed = false;
  for (const auto& row : rows) {
    if (row.failed) {
      any_failed = true;
      std::cout << std::left << std::setw(28) << row.name << std::right << std::setw(14)
                << "failed" << "\n";
      doc.push_back({{"instance", row.name}, {"failed", true}});
      continue;
    }
    std::cout << std::left << std::setw(28) << row.name << std::right << std::setw(14)
              << zdflp::format_double(row.best) << std::setw(14)
              << zdflp::format_double(row.average) << std::setw(12) << std::fixed
              << std::setprecision(2) << row.avg_seconds << "\n";
    std::cout.unsetf(std::ios::fixed);
    doc.push_back({{"instance", row.name},
                   {"failed", false},
                   {"best", row.best},
                   {"average", row.average},
                   {"avg_seconds", row.avg_seconds},
                   {"replications", replications}});
  }
  if (!out_path.empty()) write_text_file(out_path, doc.dump(2) + "\n");
  return any_failed ? 1 : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zone-based dynamic facility layout solver"};
  app.require_subcommand(1);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check an instance file");
  std::string validate_path;
  validate_cmd->add_option("--instance", validate_path, "instance file")->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance exactly or with MIP-VNS");
  SolveArgs solve_args;
  solve_cmd->add_option("--instance", solve_args.instance_path, "instance file")->required();
  solve_cmd->add_option("--method", solve_args.method, "exact or vns");
  solve_cmd->add_option("--seed", solve_args.seed, "RNG seed for vns");
  solve_cmd->add_option("--gmax", solve_args.gmax, "outer iterations for vns");
  solve_cmd->add_option("--kappa", solve_args.kappa, "phase-1 feasible solution count");
  solve_cmd->add_option("--delta", solve_args.delta, "override area support point count");
  solve_cmd->add_option("--time-limit", solve_args.time_limit,
                        "full-model solve time limit, seconds");
  solve_cmd->add_option("--sub-time-limit", solve_args.sub_time_limit,
                        "restricted subproblem time limit, seconds");
  solve_cmd->add_option("--out", solve_args.out_path, "solution file to write");
  solve_cmd->add_option("--trace", solve_args.trace_path, "search trace file to write (vns)");
  solve_cmd->add_option("--mps-out", solve_args.mps_path, "dump the full model as MPS");
  solve_cmd->add_flag("--trace-timing", solve_args.trace_timing,
                      "include wall-clock fields in the trace");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "re-check a solution against an instance");
  std::string eval_instance, eval_solution;
  eval_cmd->add_option("--instance", eval_instance, "instance file")->required();
  eval_cmd->add_option("--solution", eval_solution, "solution file")->required();

  // render
  auto* render_cmd = app.add_subcommand("render", "render a solution as SVG, one file per period");
  std::string render_solution, render_out = "layout";
  zdflp::RenderStyle style;
  render_cmd->add_option("--solution", render_solution, "solution file")->required();
  render_cmd->add_option("--out", render_out, "output file prefix");
  render_cmd->add_option("--scale", style.scale, "pixels per length unit");
  render_cmd->add_flag("--show-io,!--no-show-io", style.show_io, "draw I/O markers");
  render_cmd->add_flag("--zone-bounds,!--no-zone-bounds", style.show_zone_bounds,
                       "draw zone rectangles");
  render_cmd->add_flag("--replacement-labels,!--no-replacement-labels",
                       style.replacement_labels, "annotate department replacements");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run VNS replications over an instance directory");
  std::string bench_dir, bench_out;
  int bench_reps = 5, bench_gmax = 50, bench_kappa = 3;
  double bench_sub_limit = 10.0;
  bench_cmd->add_option("--instances", bench_dir, "directory of instance files")->required();
  bench_cmd->add_option("--replications", bench_reps, "replications per instance (seeds 1..n)");
  bench_cmd->add_option("--gmax", bench_gmax, "outer iterations per replication");
  bench_cmd->add_option("--kappa", bench_kappa, "phase-1 feasible solution count");
  bench_cmd->add_option("--sub-time-limit", bench_sub_limit, "subproblem time limit, seconds");
  bench_cmd->add_option("--out", bench_out, "machine-readable results file");

  CLI11_PARSE(app, argc, argv);

  if (validate_cmd->parsed()) {
    try {
      zdflp::load_instance_file(validate_path);
      std::cout << "instance is valid\n";
      return kExitOk;
    } catch (const std::exception& e) {
      return report_input_error(e);
    }
  }

  if (solve_cmd->parsed()) return run_solve(solve_args);

  if (eval_cmd->parsed()) {
    try {
      const zdflp::Instance inst = zdflp::load_instance_file(eval_instance);
      const zdflp::LayoutSolution sol = zdflp::load_solution_file(eval_solution);
      const auto recomputed = zdflp::recompute_tc(sol, inst);
      print_breakdown(recomputed);
      const auto violations = zdflp::check(sol, inst);
      if (violations.empty()) {
        std::cout << "feasible: yes\n";
        return kExitOk;
      }
      std::cout << "feasible: no\n";
      for (const auto& v : violations)
        std::cout << "  [" << v.code << "] " << v.where << " by "
                  << zdflp::format_double(v.magnitude) << "\n";
      return kExitInput;
    } catch (const std::exception& e) {
      return report_input_error(e);
    }
  }

  if (render_cmd->parsed()) {
    try {
      const zdflp::LayoutSolution sol = zdflp::load_solution_file(render_solution);
      const auto docs = zdflp::render_svg(sol, style);
      for (std::size_t t = 0; t < docs.size(); ++t) {
        const std::string path = render_out + "_t" + std::to_string(t + 1) + ".svg";
        write_text_file(path, docs[t]);
        std::cout << "wrote " << path << "\n";
      }
      return kExitOk;
    } catch (const std::exception& e) {
      return report_input_error(e);
    }
  }

  if (bench_cmd->parsed())
    return run_bench(bench_dir, bench_reps, bench_gmax, bench_kappa, bench_sub_limit,
                     bench_out);

  return kExitOk;
}
