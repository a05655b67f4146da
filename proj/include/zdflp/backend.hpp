#ifndef ZDFLP_BACKEND_HPP
#define ZDFLP_BACKEND_HPP

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zdflp/model.hpp"
#include "zdflp/mps.hpp"

namespace zdflp {

struct SolveLimits {
  std::optional<double> time_limit;    // seconds
  std::optional<double> gap_limit;     // relative MIP gap
  std::optional<int> solution_limit;   // stop after n improving incumbents
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, Error };

inline const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    default: return "error";
  }
}

struct SolveResult {
  SolveStatus status = SolveStatus::Error;
  double objective = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> values;  // by ModelSpec variable position; empty if none
  double gap = std::numeric_limits<double>::quiet_NaN();
  double wall_time = 0.0;
  std::string status_text;
  std::string diagnostics;

  bool has_solution() const {
    return status == SolveStatus::Optimal || status == SolveStatus::Feasible;
  }
};

struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kFeasibilityTol = 1e-6;
constexpr double kIntegralityTol = 1e-6;

// Re-checks a value vector against every row, bound, fixing and integrality
// mark of the model. Returns a description of the first breach, if any.
inline std::optional<std::string> verify_solution(const ModelSpec& m,
                                                  const std::vector<double>& x,
                                                  double tol = kFeasibilityTol) {
  if (x.size() != m.variables.size()) return "value vector does not cover all variables";
  for (std::size_t v = 0; v < m.variables.size(); ++v) {
    const VarRef& ref = m.variables[v];
    if (x[v] < ref.lo - tol || x[v] > ref.hi + tol)
      return "variable " + ref.name() + " = " + format_double(x[v]) + " outside bounds";
    if (ref.integral && std::fabs(x[v] - std::round(x[v])) > kIntegralityTol)
      return "variable " + ref.name() + " = " + format_double(x[v]) + " not integral";
  }
  for (const auto& [var, value] : m.fixings)
    if (std::fabs(x[static_cast<std::size_t>(var)] - value) > tol)
      return "fixed variable " + m.variables[static_cast<std::size_t>(var)].name() +
             " deviates from its fixing";
  for (std::size_t row = 0; row < m.constraints.size(); ++row) {
    const ConstraintRow& c = m.constraints[row];
    double lhs = 0.0;
    for (const Term& term : c.terms) lhs += term.coef * x[static_cast<std::size_t>(term.var)];
    const double slack = lhs - c.rhs;
    if ((c.sense == Sense::LE && slack > tol) || (c.sense == Sense::GE && slack < -tol) ||
        (c.sense == Sense::EQ && std::fabs(slack) > tol))
      return "row " + std::to_string(row) + " (" + c.tag + ") violated by " +
             format_double(std::fabs(slack));
  }
  return std::nullopt;
}

namespace detail {

// Fallback solver runner: drives the HiGHS bindings bundled with SciPy (or a
// standalone highspy) with the same command-line convention as the HiGHS CLI.
inline constexpr const char* kPythonRunner = R"PY(
import sys


def load_highs():
    try:
        from scipy.optimize._highspy import _core
        return _core._Highs
    except Exception:
        pass
    try:
        import highspy
        return highspy.Highs
    except Exception as exc:
        sys.stderr.write("no HiGHS python bindings available: %s\n" % exc)
        sys.exit(2)


def parse_args(argv):
    model, options_file, solution_file = None, None, None
    i = 0
    while i < len(argv):
        a = argv[i]
        if a.startswith("--options_file="):
            options_file = a.split("=", 1)[1]
        elif a == "--options_file":
            i += 1
            options_file = argv[i]
        elif a.startswith("--solution_file="):
            solution_file = a.split("=", 1)[1]
        elif a == "--solution_file":
            i += 1
            solution_file = argv[i]
        elif not a.startswith("--"):
            model = a
        i += 1
    return model, options_file, solution_file


def apply_options(h, path):
    for line in open(path):
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, value = [part.strip() for part in line.split("=", 1)]
        if value in ("true", "false"):
            h.setOptionValue(key, value == "true")
            continue
        try:
            h.setOptionValue(key, int(value))
            continue
        except (ValueError, TypeError):
            pass
        try:
            h.setOptionValue(key, float(value))
            continue
        except (ValueError, TypeError):
            pass
        h.setOptionValue(key, value)


def main():
    model, options_file, solution_file = parse_args(sys.argv[1:])
    if model is None:
        sys.stderr.write("usage: runner <model.mps> [--options_file f] [--solution_file f]\n")
        sys.exit(2)
    h = load_highs()()
    h.setOptionValue("output_flag", False)
    if options_file:
        apply_options(h, options_file)
    status = h.readModel(model)
    if "kOk" not in str(status):
        sys.stderr.write("failed to read model %s\n" % model)
        sys.exit(1)
    h.run()
    if solution_file:
        h.writeSolution(solution_file, 0)


main()
)PY";

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "zdflp-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (!mkdtemp(buf.data())) throw BackendError("cannot create temp directory");
    path = buf.data();
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw BackendError("cannot write " + path.string());
}

inline bool on_path(const std::string& exe) {
  const char* path_env = std::getenv("PATH");
  if (!path_env) return false;
  std::istringstream dirs(path_env);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    std::error_code ec;
    if (std::filesystem::exists(std::filesystem::path(dir) / exe, ec)) return true;
  }
  return false;
}

// Resolution order: ZDFLP_SOLVER_CMD template, a `highs` executable on PATH,
// then the bundled python runner. The template uses {mps}, {options} and
// {solution} placeholders.
inline const std::string& solver_command_template() {
  static const std::string cached = [] {
    if (const char* env = std::getenv("ZDFLP_SOLVER_CMD")) return std::string(env);
    if (on_path("highs"))
      return std::string("highs {mps} --options_file {options} --solution_file {solution}");
    static std::once_flag flag;
    static std::filesystem::path runner;
    std::call_once(flag, [] {
      runner = std::filesystem::temp_directory_path() /
               ("zdflp_runner_" + std::to_string(::getpid()) + ".py");
      write_file(runner, kPythonRunner);
    });
    return "python3 " + runner.string() +
           " {mps} --options_file {options} --solution_file {solution}";
  }();
  return cached;
}

inline std::string substitute(std::string tmpl, const std::string& key,
                              const std::string& value) {
  for (std::size_t pos = tmpl.find(key); pos != std::string::npos; pos = tmpl.find(key))
    tmpl.replace(pos, key.size(), value);
  return tmpl;
}

struct RunOutput {
  int exit_code = -1;
  std::string output;
};

inline RunOutput run_command(const std::string& cmd) {
  RunOutput result;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) throw BackendError("cannot start solver subprocess");
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    result.output.append(buf.data(), n);
  const int rc = pclose(pipe);
  result.exit_code = rc < 0 ? rc : WEXITSTATUS(rc);
  return result;
}

// HiGHS raw solution format: a "Model status" header, then under "# Primal
// solution values" a Feasible/Infeasible marker, the objective, and one
// "name value" line per column.
struct ParsedSolution {
  std::string status_text;
  bool primal_feasible = false;
  double objective = std::numeric_limits<double>::quiet_NaN();
  std::map<std::string, double> values;
  bool well_formed = false;
};

inline ParsedSolution parse_solution_file(const std::string& text) {
  ParsedSolution parsed;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line == "Model status") {
      if (std::getline(in, line)) {
        parsed.status_text = line;
        parsed.well_formed = true;
      }
    } else if (line == "# Primal solution values") {
      if (std::getline(in, line)) parsed.primal_feasible = (line == "Feasible");
    } else if (line.rfind("Objective", 0) == 0) {
      std::istringstream ls(line);
      std::string word;
      ls >> word >> parsed.objective;
    } else if (line.rfind("# Columns", 0) == 0) {
      std::istringstream ls(line);
      std::string hash, word;
      long count = 0;
      ls >> hash >> word >> count;
      for (long n = 0; n < count && std::getline(in, line); ++n) {
        std::istringstream vs(line);
        std::string name;
        double value = 0.0;
        if (vs >> name >> value) parsed.values[name] = value;
      }
      break;  // dual values and basis sections are irrelevant here
    }
  }
  return parsed;
}

}  // namespace detail

// Writes the model as MPS, runs the configured solver subprocess, parses the
// solution file and re-verifies every returned value against the model.
inline SolveResult solve(const ModelSpec& m, const SolveLimits& limits = {}) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;

  detail::TempDir dir;
  const auto mps_path = dir.path / "model.mps";
  const auto opt_path = dir.path / "model.opt";
  const auto sol_path = dir.path / "model.sol";
  detail::write_file(mps_path, write_mps(m));

  std::string options;
  options += "output_flag = false\n";
  options += "threads = 1\n";
  options += "random_seed = 0\n";
  options += "mip_rel_gap = " + format_double(limits.gap_limit.value_or(0.0)) + "\n";
  options += "mip_abs_gap = 0\n";
  if (limits.time_limit) options += "time_limit = " + format_double(*limits.time_limit) + "\n";
  if (limits.solution_limit)
    options += "mip_max_improving_sols = " + std::to_string(*limits.solution_limit) + "\n";
  detail::write_file(opt_path, options);

  std::string cmd = detail::solver_command_template();
  cmd = detail::substitute(cmd, "{mps}", mps_path.string());
  cmd = detail::substitute(cmd, "{options}", opt_path.string());
  cmd = detail::substitute(cmd, "{solution}", sol_path.string());

  detail::RunOutput run;
  try {
    run = detail::run_command(cmd);
  } catch (const std::exception& e) {
    result.diagnostics = e.what();
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

  std::ifstream sol_in(sol_path, std::ios::binary);
  if (!sol_in) {
    result.diagnostics = "solver produced no solution file (exit " +
                         std::to_string(run.exit_code) + "): " + run.output;
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }
  std::ostringstream sol_buf;
  sol_buf << sol_in.rdbuf();
  const detail::ParsedSolution parsed = detail::parse_solution_file(sol_buf.str());
  result.status_text = parsed.status_text;

  if (!parsed.well_formed) {
    result.diagnostics = "unparseable solution file: " + run.output;
  } else if (parsed.status_text == "Optimal") {
    result.status = SolveStatus::Optimal;
  } else if (parsed.status_text.find("nfeasible") != std::string::npos &&
             parsed.status_text.find("nbounded") == std::string::npos) {
    result.status = SolveStatus::Infeasible;
  } else if (parsed.status_text.find("nbounded") != std::string::npos) {
    result.status = SolveStatus::Unbounded;
  } else if (parsed.primal_feasible) {
    result.status = SolveStatus::Feasible;  // stopped at a limit with an incumbent
  } else {
    result.diagnostics = "solver stopped without a solution: " + parsed.status_text;
  }

  if (result.has_solution()) {
    if (!parsed.primal_feasible) {
      result.status = SolveStatus::Error;
      result.diagnostics = "status " + parsed.status_text + " without primal values";
    } else {
      result.objective = parsed.objective;
      result.values.assign(m.variables.size(), 0.0);
      std::size_t found = 0;
      for (const auto& [name, value] : parsed.values) {
        if (name.size() < 2 || name[0] != 'x') continue;
        const std::size_t v = std::strtoul(name.c_str() + 1, nullptr, 10);
        if (v < result.values.size()) {
          result.values[v] = value;
          ++found;
        }
      }
      if (found != m.variables.size()) {
        result.status = SolveStatus::Error;
        result.diagnostics = "solution covers " + std::to_string(found) + " of " +
                             std::to_string(m.variables.size()) + " variables";
        result.values.clear();
      } else if (auto breach = verify_solution(m, result.values)) {
        result.status = SolveStatus::Error;
        result.diagnostics = "solver values fail verification: " + *breach;
        result.values.clear();
      } else {
        double recomputed = 0.0;
        for (const Term& term : m.objective)
          recomputed += term.coef * result.values[static_cast<std::size_t>(term.var)];
        if (std::fabs(recomputed - result.objective) >
            kFeasibilityTol * std::max(1.0, std::fabs(result.objective))) {
          result.status = SolveStatus::Error;
          result.diagnostics = "reported objective " + format_double(result.objective) +
                               " disagrees with recomputed " + format_double(recomputed);
          result.values.clear();
        }
        if (result.status == SolveStatus::Optimal) result.gap = 0.0;
      }
    }
  }

  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace zdflp

#endif  // ZDFLP_BACKEND_HPP
