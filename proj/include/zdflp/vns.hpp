#ifndef ZDFLP_VNS_HPP
#define ZDFLP_VNS_HPP

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zdflp/backend.hpp"
#include "zdflp/evaluate.hpp"
#include "zdflp/model.hpp"
#include "zdflp/solution.hpp"

namespace zdflp {

struct SearchConfig {
  int g_max = 50;                       // outer iterations
  int kappa = 3;                        // phase-I feasible-solution count
  double subproblem_time_limit = 10.0;  // seconds per restricted solve
  std::optional<double> phase1_time_limit;
  std::uint64_t seed = 1;
  double improvement_epsilon = 1e-9;    // relative acceptance threshold for S*
};

struct TraceEvent {
  int g = 0;
  int neighborhood = 0;             // K in 1..4
  std::string i1;
  int t1 = 0;                       // 1-based in serialized form
  std::optional<std::string> i2;
  std::optional<int> t2;
  double candidate_tc = std::numeric_limits<double>::quiet_NaN();
  bool subproblem_optimal = false;
  bool accepted = false;
  double incumbent_tc = 0.0;        // TC(S) before the acceptance decision
  double best_tc = 0.0;             // TC(S*) after the acceptance decision
  double wall_time = 0.0;
  std::string error;                // nonempty when the candidate failed
};

struct SearchTrace {
  std::vector<TraceEvent> events;
};

struct Phase1Error : std::runtime_error {
  SolveStatus status;
  Phase1Error(SolveStatus s, const std::string& msg)
      : std::runtime_error(msg), status(s) {}
};

// One line-delimited record per event. Wall-clock fields are withheld unless
// requested so identical runs serialize to identical bytes.
inline std::string serialize_trace(const SearchTrace& trace, bool include_timing = false) {
  using nlohmann::json;
  std::string out;
  for (const TraceEvent& e : trace.events) {
    json j;
    j["g"] = e.g;
    j["K"] = e.neighborhood;
    j["i"] = e.i1;
    j["t"] = e.t1 + 1;
    j["i2"] = e.i2 ? json(*e.i2) : json(nullptr);
    j["t2"] = e.t2 ? json(*e.t2 + 1) : json(nullptr);
    j["candidate_tc"] = std::isnan(e.candidate_tc) ? json(nullptr) : json(e.candidate_tc);
    j["subproblem_optimal"] = e.subproblem_optimal;
    j["accepted"] = e.accepted;
    j["incumbent_tc"] = e.incumbent_tc;
    j["best_tc"] = e.best_tc;
    if (include_timing) j["wall_time"] = e.wall_time;
    if (!e.error.empty()) j["error"] = e.error;
    out += j.dump();
    out += '\n';
  }
  return out;
}

// The neighborhood structures U1-U4: exactly the published index sets,
// intersected with the instance's active (department, period) pairs and
// deduplicated. i2 is required for kinds 3-4, t2 for kind 4.
inline VariableSet neighborhood(int kind, int i1, int t1, std::optional<int> i2,
                                std::optional<int> t2, const Instance& inst) {
  if (kind < 1 || kind > 4) throw std::invalid_argument("neighborhood kind must be 1..4");
  if (!inst.department_active(i1, t1))
    throw std::invalid_argument("department i' is not active in period t'");
  if (kind >= 3) {
    if (!i2) throw std::invalid_argument("neighborhood kind " + std::to_string(kind) +
                                         " requires a second department");
    if (*i2 == i1) throw std::invalid_argument("i'' must differ from i'");
  }
  if (kind == 4) {
    if (!t2) throw std::invalid_argument("neighborhood kind 4 requires a second period");
    if (*t2 == t1) throw std::invalid_argument("t'' must differ from t'");
  }
  if (kind == 2 && t1 + 1 >= inst.periods)
    throw std::invalid_argument("neighborhood kind 2 requires period t'+1 to exist");

  VariableSet u;
  auto add_dept_period = [&](int i, int t) {
    if (!inst.department_active(i, t)) return;
    for (int j : inst.active_departments(t)) {
      if (j == i) continue;
      for (Axis r : kAxes) {
        u.z.insert({i, j, t, static_cast<int>(r)});
        u.z.insert({j, i, t, static_cast<int>(r)});
      }
    }
    for (int k = 0; k < inst.zones.count; ++k) u.b.insert({i, k, t});
    for (Axis r : kAxes) u.l.insert({i, t, static_cast<int>(r)});
  };

  add_dept_period(i1, t1);
  if (kind == 2) add_dept_period(i1, t1 + 1);
  if (kind == 3) add_dept_period(*i2, t1);
  if (kind == 4) {
    add_dept_period(i1, *t2);
    add_dept_period(*i2, t1);
    add_dept_period(*i2, *t2);
  }
  return u;
}

// Phase I: solve the full problem until kappa feasible solutions are found
// (and/or a time limit) and keep the best incumbent.
inline LayoutSolution phase1(const Instance& inst, const SearchConfig& cfg) {
  auto issues = validate(inst);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  const ModelSpec model = build_full_model(inst);
  SolveLimits limits;
  limits.solution_limit = cfg.kappa;
  limits.time_limit = cfg.phase1_time_limit;
  const SolveResult result = solve(model, limits);
  if (!result.has_solution())
    throw Phase1Error(result.status,
                      "phase 1 found no feasible solution (" +
                          std::string(solve_status_name(result.status)) +
                          "): " + result.diagnostics);
  return decode(model, result, inst);
}

namespace detail {

struct CandidateOutcome {
  LayoutSolution solution;
  double raw_tc = std::numeric_limits<double>::quiet_NaN();
  bool subproblem_optimal = false;
  bool fell_back_to_incumbent = false;
};

inline CandidateOutcome generate_candidate_impl(const Instance& inst,
                                                const LayoutSolution& incumbent,
                                                const VariableSet& free,
                                                const SearchConfig& cfg) {
  const ModelSpec restricted = build_restricted_model(inst, incumbent, free);
  SolveLimits limits;
  if (cfg.subproblem_time_limit > 0) limits.time_limit = cfg.subproblem_time_limit;
  const SolveResult result = solve(restricted, limits);
  if (result.status == SolveStatus::Infeasible)
    // The incumbent itself satisfies every fixing, so this cannot happen for a
    // feasible incumbent; treat it as a backend failure.
    throw BackendError("restricted subproblem reported infeasible around a feasible incumbent");
  if (!result.has_solution())
    throw BackendError("restricted subproblem failed (" +
                       std::string(solve_status_name(result.status)) +
                       "): " + result.diagnostics);

  CandidateOutcome outcome;
  outcome.subproblem_optimal = result.status == SolveStatus::Optimal;
  outcome.solution = decode(restricted, result, inst);
  outcome.raw_tc = outcome.solution.costs.total;
  if (!outcome.subproblem_optimal &&
      outcome.raw_tc > incumbent.costs.total) {
    outcome.solution = incumbent;  // time limit hit with a worse incumbent
    outcome.fell_back_to_incumbent = true;
  }
  return outcome;
}

}  // namespace detail

// Fix z/b/l to the incumbent, unfix set U, re-optimize. Returns the candidate
// (or the incumbent when a time-limited solve ends worse).
inline LayoutSolution generate_candidate(const Instance& inst, const LayoutSolution& incumbent,
                                         const VariableSet& free, const SearchConfig& cfg) {
  return detail::generate_candidate_impl(inst, incumbent, free, cfg).solution;
}

// Phase II neighborhood search. Starting from a feasible incumbent, sweeps all
// active (department, period) pairs in random order per outer iteration,
// re-optimizing the current neighborhood around each draw; the neighborhood
// kind advances cyclically 1->2->3->4->1 whenever a full sweep fails to
// improve the best solution.
inline std::pair<LayoutSolution, SearchTrace> phase2(const Instance& inst,
                                                     const LayoutSolution& start,
                                                     const SearchConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  LayoutSolution current = start;   // S
  LayoutSolution best = start;      // S*
  SearchTrace trace;
  int kind = 1;
  int noupdate = 0;

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  for (int g = 1; g <= cfg.g_max; ++g) {
    ++noupdate;
    std::vector<std::pair<int, int>> pool;  // A = {(i, t)}
    for (int t = 0; t < inst.periods; ++t)
      for (int i : inst.active_departments(t)) pool.push_back({i, t});

    while (!pool.empty()) {
      const std::size_t at = static_cast<std::size_t>(uniform_index(rng, pool.size()));
      const auto [i1, t1] = pool[at];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));

      int effective = kind;
      std::optional<int> i2, t2;
      if (effective == 2 && t1 + 1 >= inst.periods) effective = 1;
      if (effective == 3 || effective == 4) {
        std::vector<int> others;
        for (int j : inst.active_departments(t1))
          if (j != i1) others.push_back(j);
        if (others.empty()) {
          effective = 1;
        } else if (effective == 3) {
          i2 = others[uniform_index(rng, others.size())];
        } else {
          // Kind 4 draws (i'', t'') with both departments active in both periods.
          std::vector<std::pair<int, int>> combos;
          for (int j : others)
            for (int t = 0; t < inst.periods; ++t)
              if (t != t1 && inst.department_active(i1, t) && inst.department_active(j, t))
                combos.push_back({j, t});
          if (combos.empty()) {
            effective = 1;
          } else {
            const auto pickc = combos[uniform_index(rng, combos.size())];
            i2 = pickc.first;
            t2 = pickc.second;
          }
        }
      }

      TraceEvent event;
      event.g = g;
      event.neighborhood = kind;
      event.i1 = inst.departments[static_cast<std::size_t>(i1)].id;
      event.t1 = t1;
      if (i2) event.i2 = inst.departments[static_cast<std::size_t>(*i2)].id;
      event.t2 = t2;
      event.incumbent_tc = current.costs.total;

      try {
        const VariableSet u = neighborhood(effective, i1, t1, i2, t2, inst);
        const auto outcome = detail::generate_candidate_impl(inst, current, u, cfg);
        event.candidate_tc = outcome.raw_tc;
        event.subproblem_optimal = outcome.subproblem_optimal;
        const double cand_tc = outcome.solution.costs.total;
        const double best_tc = best.costs.total;
        if (!outcome.fell_back_to_incumbent &&
            best_tc - cand_tc > cfg.improvement_epsilon * std::fabs(best_tc)) {
          best = outcome.solution;
          current = outcome.solution;
          noupdate = 0;
          event.accepted = true;
        } else if (!outcome.fell_back_to_incumbent && cand_tc < current.costs.total) {
          current = outcome.solution;
          event.accepted = true;
        }
      } catch (const std::exception& e) {
        event.error = e.what();
      }
      event.best_tc = best.costs.total;
      event.wall_time = elapsed();
      trace.events.push_back(std::move(event));
    }

    if (noupdate > 0) {
      kind = (kind % 4) + 1;
      current = best;
    }
  }
  return {best, trace};
}

}  // namespace zdflp

#endif  // ZDFLP_VNS_HPP
