#ifndef ZDFLP_EVALUATE_HPP
#define ZDFLP_EVALUATE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zdflp/backend.hpp"
#include "zdflp/instance.hpp"
#include "zdflp/model.hpp"
#include "zdflp/solution.hpp"

namespace zdflp {

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A semantic constraint breach found by check(): which constraint family, the
// offending indices, and by how much it is violated.
struct Violation {
  std::string code;
  std::string where;
  double magnitude = 0.0;
};

constexpr double kCheckTol = 1e-6;
constexpr double kChangeTol = 1e-6;  // movement below this is numerical noise

// Worst-case area deficit admitted by the tangent outer approximation for one
// department-period: adjacent tangents intersect at realized area
// 4*a*u*v/(u+v)^2, so the allowance is a*(1 - min ratio).
inline double area_allowance(const Instance& inst, int dept, int t) {
  const DeptRequirement& req = inst.departments[static_cast<std::size_t>(dept)].at(t);
  const double lo = req.min_side[0] / 2.0;
  const double hi = req.max_side[0] / 2.0;
  const double step = (hi - lo) / static_cast<double>(inst.delta - 1);
  double min_ratio = 1.0;
  for (int p = 0; p + 1 < inst.delta; ++p) {
    const double u = lo + step * static_cast<double>(p);
    const double v = u + step;
    min_ratio = std::min(min_ratio, 4.0 * u * v / ((u + v) * (u + v)));
  }
  return req.area * (1.0 - min_ratio);
}

// Recomputes the cost breakdown from geometry alone: material handling from
// I/O distances, relayout triggers from center/size changes, boundary charges
// from moved zone sides. Never reads solver variables.
inline CostBreakdown recompute_tc(const LayoutSolution& sol, const Instance& inst) {
  CostBreakdown costs;
  const int T = static_cast<int>(sol.periods.size());
  for (int t = 0; t < T; ++t) {
    const PeriodLayout& p = sol.periods[static_cast<std::size_t>(t)];
    for (const FlowPair& pair : flow_pairs(inst, t)) {
      const std::string& a = inst.departments[static_cast<std::size_t>(pair.i)].id;
      const std::string& b = inst.departments[static_cast<std::size_t>(pair.j)].id;
      auto ga = p.io_point.find(a);
      auto gb = p.io_point.find(b);
      if (ga == p.io_point.end() || gb == p.io_point.end()) continue;
      costs.material += pair.weight * (std::fabs(ga->second[0] - gb->second[0]) +
                                       std::fabs(ga->second[1] - gb->second[1]));
    }
  }
  for (int t = 1; t < T; ++t) {
    const PeriodLayout& cur = sol.periods[static_cast<std::size_t>(t)];
    const PeriodLayout& prev = sol.periods[static_cast<std::size_t>(t - 1)];
    for (const auto& [id, center] : cur.dept_center) {
      auto pc = prev.dept_center.find(id);
      if (pc == prev.dept_center.end()) continue;  // first active period: no history
      const auto& half = cur.dept_half.at(id);
      const auto& ph = prev.dept_half.at(id);
      const double dx = std::fabs(center[0] - pc->second[0]);
      const double dy = std::fabs(center[1] - pc->second[1]);
      const bool moved = dx > kChangeTol || dy > kChangeTol ||
                         std::fabs(half[0] - ph[0]) > kChangeTol ||
                         std::fabs(half[1] - ph[1]) > kChangeTol;
      if (moved) costs.fixed_relayout += inst.costs.fixed(id, t);
      costs.variable_relayout += inst.costs.unit(id, t) * (dx + dy);
    }
    for (const auto& [k, bounds] : cur.zone_bounds) {
      auto pb = prev.zone_bounds.find(k);
      if (pb == prev.zone_bounds.end()) continue;
      for (Side s : kSides)
        if (std::fabs(bounds.bound(s) - pb->second.bound(s)) > kChangeTol)
          costs.zone_boundary += inst.costs.boundary(k, t);
    }
  }
  costs.total = costs.material + costs.fixed_relayout + costs.variable_relayout +
                costs.zone_boundary;
  return costs;
}

// Maps solver values back to geometry. Binaries are rounded at 0.5 and the
// assignment is re-verified; the cost breakdown is recomputed from geometry,
// not read from the solver objective.
inline LayoutSolution decode(const ModelSpec& m, const SolveResult& r, const Instance& inst) {
  if (!r.has_solution()) throw DecodeError("solve result carries no solution");
  if (r.values.size() != m.variables.size())
    throw DecodeError("solve result does not cover every model variable");

  auto value = [&](VarKind kind, std::array<int, 4> idx) {
    const int v = m.var_index(kind, idx);
    if (v < 0)
      throw DecodeError("missing variable " + VarRef{kind, idx, false, 0, 0}.name());
    return r.values[static_cast<std::size_t>(v)];
  };
  auto rounded = [&](VarKind kind, std::array<int, 4> idx) {
    return value(kind, idx) >= 0.5;
  };

  LayoutSolution sol;
  sol.facility_x = inst.facility.len_x;
  sol.facility_y = inst.facility.len_y;
  for (const auto& d : inst.departments)
    if (!d.replaces.empty()) sol.replaces[d.id] = d.replaces;

  for (int t = 0; t < inst.periods; ++t) {
    PeriodLayout p;
    for (int k = 0; k < inst.zones.count; ++k) {
      p.zone_bounds[k] = {value(VarKind::Q, {k, t, static_cast<int>(Side::West), -1}),
                          value(VarKind::Q, {k, t, static_cast<int>(Side::East), -1}),
                          value(VarKind::Q, {k, t, static_cast<int>(Side::South), -1}),
                          value(VarKind::Q, {k, t, static_cast<int>(Side::North), -1})};
      p.zone_orientation[k] = rounded(VarKind::Beta, {k, -1, -1, -1}) ? Axis::Y : Axis::X;
    }
    const auto active = inst.active_departments(t);
    for (int i : active) {
      const std::string& id = inst.departments[static_cast<std::size_t>(i)].id;
      int zone = -1;
      int hits = 0;
      for (int k = 0; k < inst.zones.count; ++k)
        if (rounded(VarKind::B, {i, k, t, -1})) {
          zone = k;
          ++hits;
        }
      if (hits != 1)
        throw DecodeError("department '" + id + "' assigned to " + std::to_string(hits) +
                          " zones in period " + std::to_string(t + 1));
      p.assignment[id] = zone;
      p.dept_center[id] = {value(VarKind::C, {i, t, 0, -1}), value(VarKind::C, {i, t, 1, -1})};
      p.dept_half[id] = {value(VarKind::L, {i, t, 0, -1}), value(VarKind::L, {i, t, 1, -1})};
      p.io_point[id] = {value(VarKind::G, {i, t, 0, -1}), value(VarKind::G, {i, t, 1, -1})};
    }
    for (int i : active)
      for (int j : active) {
        if (i == j) continue;
        for (Axis r : kAxes)
          if (rounded(VarKind::Z, {i, j, t, static_cast<int>(r)}))
            p.ordering.insert({inst.departments[static_cast<std::size_t>(i)].id,
                               inst.departments[static_cast<std::size_t>(j)].id, r});
      }
    sol.periods.push_back(std::move(p));
  }
  sol.costs = recompute_tc(sol, inst);
  return sol;
}

// Semantic feasibility check of a layout against every model constraint,
// re-expressed geometrically. Empty result means feasible within tolerance.
inline std::vector<Violation> check(const LayoutSolution& sol, const Instance& inst) {
  std::vector<Violation> out;
  auto add = [&out](const std::string& code, const std::string& where, double mag) {
    out.push_back({code, where, mag});
  };

  if (static_cast<int>(sol.periods.size()) != inst.periods) {
    add("period-count", "solution has " + std::to_string(sol.periods.size()) +
                            " periods, instance has " + std::to_string(inst.periods),
        1.0);
    return out;
  }

  for (int t = 0; t < inst.periods; ++t) {
    const PeriodLayout& p = sol.periods[static_cast<std::size_t>(t)];
    const std::string period = "period " + std::to_string(t + 1);

    for (const auto& [k, g] : p.zone_bounds) {
      const std::string where = "zone " + std::to_string(k + 1) + ", " + period;
      if (g.west > g.east + kCheckTol) add("zone-bounds-order", where, g.west - g.east);
      if (g.south > g.north + kCheckTol) add("zone-bounds-order", where, g.south - g.north);
      const double breach =
          std::max({-g.west, -g.south, g.east - inst.facility.len_x,
                    g.north - inst.facility.len_y});
      if (breach > kCheckTol) add("zone-outside-facility", where, breach);
    }

    for (auto a = p.zone_bounds.begin(); a != p.zone_bounds.end(); ++a)
      for (auto b = std::next(a); b != p.zone_bounds.end(); ++b) {
        const double ox = std::min(a->second.east, b->second.east) -
                          std::max(a->second.west, b->second.west);
        const double oy = std::min(a->second.north, b->second.north) -
                          std::max(a->second.south, b->second.south);
        if (ox > kCheckTol && oy > kCheckTol)
          add("zone-overlap",
              "zones " + std::to_string(a->first + 1) + "," + std::to_string(b->first + 1) +
                  ", " + period,
              std::min(ox, oy));
      }

    std::map<int, std::vector<std::string>> members;
    for (int i : inst.active_departments(t)) {
      const std::string& id = inst.departments[static_cast<std::size_t>(i)].id;
      auto it = p.assignment.find(id);
      if (it == p.assignment.end() || !p.zone_bounds.count(it->second) ||
          !p.dept_center.count(id) || !p.dept_half.count(id) || !p.io_point.count(id)) {
        add("dept-unassigned", "department '" + id + "', " + period, 1.0);
        continue;
      }
      members[it->second].push_back(id);
    }
    for (const auto& [k, g] : p.zone_bounds)
      if (!members.count(k) || members.at(k).empty())
        add("zone-empty", "zone " + std::to_string(k + 1) + ", " + period, 1.0);

    for (const auto& [k, ids] : members) {
      const ZoneGeom& zg = p.zone_bounds.at(k);
      const Axis axis = p.zone_orientation.at(k);
      for (const std::string& id : ids) {
        const auto& c = p.dept_center.at(id);
        const auto& l = p.dept_half.at(id);
        const std::string where = "department '" + id + "', " + period;
        const double breach =
            std::max({zg.west - (c[0] - l[0]), (c[0] + l[0]) - zg.east,
                      zg.south - (c[1] - l[1]), (c[1] + l[1]) - zg.north});
        if (breach > kCheckTol) add("dept-outside-zone", where, breach);
      }
      for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
          const int r = static_cast<int>(axis);
          const auto& ca = p.dept_center.at(ids[a]);
          const auto& cb = p.dept_center.at(ids[b]);
          const double la = p.dept_half.at(ids[a])[r];
          const double lb = p.dept_half.at(ids[b])[r];
          const double gap =
              std::max(cb[r] - lb - (ca[r] + la), ca[r] - la - (cb[r] + lb));
          if (gap < -kCheckTol)
            add("intra-zone-overlap",
                "departments '" + ids[a] + "','" + ids[b] + "' in zone " +
                    std::to_string(k + 1) + ", " + period,
                -gap);
          const int dir = static_cast<int>(p.ordering.count({ids[a], ids[b], axis})) +
                          static_cast<int>(p.ordering.count({ids[b], ids[a], axis}));
          if (dir != 1)
            add("z-ordering",
                "departments '" + ids[a] + "','" + ids[b] + "' in zone " +
                    std::to_string(k + 1) + ", " + period,
                1.0);
        }
    }

    for (const auto& [from, to, axis] : p.ordering) {
      if (!p.dept_center.count(from) || !p.dept_center.count(to)) continue;
      const int r = static_cast<int>(axis);
      const double overhang = p.dept_center.at(from)[r] + p.dept_half.at(from)[r] -
                              (p.dept_center.at(to)[r] - p.dept_half.at(to)[r]);
      if (overhang > kCheckTol)
        add("z-separation",
            "'" + from + "' before '" + to + "' on " + axis_name(axis) + ", " + period,
            overhang);
    }

    for (int i : inst.active_departments(t)) {
      const std::string& id = inst.departments[static_cast<std::size_t>(i)].id;
      if (!p.dept_half.count(id) || !p.assignment.count(id)) continue;
      const DeptRequirement& req = inst.departments[static_cast<std::size_t>(i)].at(t);
      const auto& l = p.dept_half.at(id);
      const auto& c = p.dept_center.at(id);
      const auto& g = p.io_point.at(id);
      const std::string where = "department '" + id + "', " + period;
      for (Axis r : kAxes) {
        const int n = static_cast<int>(r);
        const double side = 2.0 * l[n];
        if (side < req.min_side[n] - kCheckTol)
          add("side-bounds", where, req.min_side[n] - side);
        if (side > req.max_side[n] + kCheckTol)
          add("side-bounds", where, side - req.max_side[n]);
        const double out_of_dept = std::max(c[n] - l[n] - g[n], g[n] - (c[n] + l[n]));
        if (out_of_dept > kCheckTol) add("io-outside-dept", where, out_of_dept);
      }
      const double realized = 4.0 * l[0] * l[1];
      const double floor_area = req.area - area_allowance(inst, i, t);
      if (realized < floor_area - kCheckTol) add("area", where, floor_area - realized);
      const int zone = p.assignment.at(id);
      if (p.zone_orientation.count(zone)) {
        const int r = static_cast<int>(p.zone_orientation.at(zone));
        if (std::fabs(g[r] - c[r]) > kCheckTol)
          add("io-centering", where, std::fabs(g[r] - c[r]));
      }
    }
  }
  return out;
}

namespace detail {

struct PeriodChoice {
  // Per unordered zone pair (k < h), which of the four precedence options is
  // active: 0 k<-x->h, 1 h<-x->k, 2 k<-y->h, 3 h<-y->k.
  std::vector<int> gamma;
  std::vector<int> assign;                 // zone per active department
  std::vector<std::vector<int>> orders;    // per zone, departments in order
};

inline std::vector<std::vector<int>> gamma_options(const Instance& inst, int t) {
  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < inst.zones.count; ++k)
    for (int h = k + 1; h < inst.zones.count; ++h) pairs.push_back({k, h});
  std::vector<std::vector<int>> result;
  std::vector<int> current(pairs.size(), 0);
  auto pinned_option = [&](int k, int h) -> int {
    for (const auto& pin : inst.zones.pinned_precedence) {
      if (pin.period != t) continue;
      if (pin.before == k && pin.after == h)
        return pin.axis == Axis::X ? 0 : 2;
      if (pin.before == h && pin.after == k)
        return pin.axis == Axis::X ? 1 : 3;
    }
    return -1;
  };
  std::function<void(std::size_t)> recurse = [&](std::size_t n) {
    if (n == pairs.size()) {
      result.push_back(current);
      return;
    }
    const int forced = pinned_option(pairs[n].first, pairs[n].second);
    for (int opt = 0; opt < 4; ++opt) {
      if (forced >= 0 && opt != forced) continue;
      current[n] = opt;
      recurse(n + 1);
    }
  };
  recurse(0);
  return result;
}

inline std::vector<std::vector<int>> assignment_options(const Instance& inst, int t) {
  const auto active = inst.active_departments(t);
  const int K = inst.zones.count;
  std::vector<int> pinned(active.size(), -1);
  for (std::size_t a = 0; a < active.size(); ++a)
    for (const auto& pin : inst.zones.pinned_assignment)
      if (pin.period == t &&
          inst.department_index(pin.department) == active[a])
        pinned[a] = pin.zone;
  std::vector<std::vector<int>> result;
  std::vector<int> current(active.size(), 0);
  std::function<void(std::size_t)> recurse = [&](std::size_t n) {
    if (n == active.size()) {
      std::vector<bool> used(static_cast<std::size_t>(K), false);
      for (int z : current) used[static_cast<std::size_t>(z)] = true;
      if (std::all_of(used.begin(), used.end(), [](bool u) { return u; }))
        result.push_back(current);
      return;
    }
    for (int z = 0; z < K; ++z) {
      if (pinned[n] >= 0 && z != pinned[n]) continue;
      current[n] = z;
      recurse(n + 1);
    }
  };
  recurse(0);
  return result;
}

}  // namespace detail

// Exhaustive solve of a tiny instance: enumerates every discrete structure
// (zone orientations, zone precedences, assignments and intra-zone orders) and
// lets the backend optimize the remaining geometry for each, keeping the best.
// Exact for the linearized model. Ties break to the first (lexicographically
// smallest) structure enumerated.
inline LayoutSolution oracle_solve(const Instance& inst) {
  auto issues = validate(inst);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  if (inst.periods > 2 || inst.zones.count > 2)
    throw std::invalid_argument("oracle accepts at most 2 zones and 2 periods");
  for (int t = 0; t < inst.periods; ++t)
    if (inst.active_departments(t).size() > 4)
      throw std::invalid_argument("oracle accepts at most 4 active departments per period");

  const ModelSpec base = build_full_model(inst);
  const int K = inst.zones.count;

  // Pre-enumerate the per-period choices.
  std::vector<std::vector<detail::PeriodChoice>> choices(
      static_cast<std::size_t>(inst.periods));
  for (int t = 0; t < inst.periods; ++t) {
    const auto active = inst.active_departments(t);
    for (const auto& gamma : detail::gamma_options(inst, t))
      for (const auto& assign : detail::assignment_options(inst, t)) {
        std::vector<std::vector<int>> zone_members(static_cast<std::size_t>(K));
        for (std::size_t a = 0; a < active.size(); ++a)
          zone_members[static_cast<std::size_t>(assign[a])].push_back(active[a]);
        // Cartesian product of per-zone permutations.
        std::vector<std::vector<std::vector<int>>> zone_perms(static_cast<std::size_t>(K));
        for (int k = 0; k < K; ++k) {
          auto perm = zone_members[static_cast<std::size_t>(k)];
          std::sort(perm.begin(), perm.end());
          do {
            zone_perms[static_cast<std::size_t>(k)].push_back(perm);
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
        std::vector<std::size_t> pick(static_cast<std::size_t>(K), 0);
        while (true) {
          detail::PeriodChoice choice;
          choice.gamma = gamma;
          choice.assign = assign;
          for (int k = 0; k < K; ++k)
            choice.orders.push_back(zone_perms[static_cast<std::size_t>(k)][pick[static_cast<std::size_t>(k)]]);
          choices[static_cast<std::size_t>(t)].push_back(std::move(choice));
          int k = K - 1;
          while (k >= 0 && ++pick[static_cast<std::size_t>(k)] ==
                               zone_perms[static_cast<std::size_t>(k)].size()) {
            pick[static_cast<std::size_t>(k)] = 0;
            --k;
          }
          if (k < 0) break;
        }
      }
  }

  // Beta vectors respecting pins, lexicographic.
  std::vector<std::vector<int>> betas;
  {
    std::vector<int> forced(static_cast<std::size_t>(K), -1);
    for (const auto& pin : inst.zones.pinned_orientation)
      forced[static_cast<std::size_t>(pin.zone)] = pin.orientation == Axis::X ? 0 : 1;
    std::vector<int> current(static_cast<std::size_t>(K), 0);
    std::function<void(int)> recurse = [&](int k) {
      if (k == K) {
        betas.push_back(current);
        return;
      }
      for (int v = 0; v < 2; ++v) {
        if (forced[static_cast<std::size_t>(k)] >= 0 &&
            v != forced[static_cast<std::size_t>(k)])
          continue;
        current[static_cast<std::size_t>(k)] = v;
        recurse(k + 1);
      }
    };
    recurse(0);
  }

  std::vector<std::pair<int, int>> zone_pairs;
  for (int k = 0; k < K; ++k)
    for (int h = k + 1; h < K; ++h) zone_pairs.push_back({k, h});

  bool found = false;
  LayoutSolution best;

  std::vector<std::size_t> pick(static_cast<std::size_t>(inst.periods), 0);
  for (const auto& beta : betas) {
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      // Assemble the complete fixing set for this discrete structure.
      std::map<int, double> fixing;
      for (const auto& [var, value] : base.fixings) fixing[var] = value;
      for (int k = 0; k < K; ++k)
        fixing[base.require_var(VarKind::Beta, {k, -1, -1, -1})] =
            static_cast<double>(beta[static_cast<std::size_t>(k)]);

      for (int t = 0; t < inst.periods; ++t) {
        const detail::PeriodChoice& choice =
            choices[static_cast<std::size_t>(t)][pick[static_cast<std::size_t>(t)]];
        for (std::size_t n = 0; n < zone_pairs.size(); ++n) {
          const auto [k, h] = zone_pairs[n];
          const int opt = choice.gamma[n];
          fixing[base.require_var(VarKind::Gamma, {k, h, t, 0})] = opt == 0 ? 1.0 : 0.0;
          fixing[base.require_var(VarKind::Gamma, {h, k, t, 0})] = opt == 1 ? 1.0 : 0.0;
          fixing[base.require_var(VarKind::Gamma, {k, h, t, 1})] = opt == 2 ? 1.0 : 0.0;
          fixing[base.require_var(VarKind::Gamma, {h, k, t, 1})] = opt == 3 ? 1.0 : 0.0;
        }
        const auto active = inst.active_departments(t);
        for (std::size_t a = 0; a < active.size(); ++a)
          for (int k = 0; k < K; ++k)
            fixing[base.require_var(VarKind::B, {active[a], k, t, -1})] =
                choice.assign[a] == k ? 1.0 : 0.0;
        // z: one direction per same-zone pair along the zone's axis, the rest 0.
        std::map<std::pair<int, int>, std::array<bool, 2>> precede;
        for (int k = 0; k < K; ++k) {
          const int axis = beta[static_cast<std::size_t>(k)];
          const auto& order = choice.orders[static_cast<std::size_t>(k)];
          for (std::size_t a = 0; a < order.size(); ++a)
            for (std::size_t b = a + 1; b < order.size(); ++b)
              precede[{order[a], order[b]}][static_cast<std::size_t>(axis)] = true;
        }
        for (std::size_t a = 0; a < active.size(); ++a)
          for (std::size_t b = 0; b < active.size(); ++b) {
            if (a == b) continue;
            for (Axis r : kAxes) {
              auto it = precede.find({active[a], active[b]});
              const bool one = it != precede.end() &&
                               it->second[static_cast<std::size_t>(static_cast<int>(r))];
              fixing[base.require_var(VarKind::Z,
                                      {active[a], active[b], t, static_cast<int>(r)})] =
                  one ? 1.0 : 0.0;
            }
          }
      }

      ModelSpec restricted = base;
      restricted.fixings.assign(fixing.begin(), fixing.end());
      const SolveResult result = solve(restricted, {});
      if (result.status == SolveStatus::Optimal) {
        LayoutSolution candidate = decode(restricted, result, inst);
        if (!found || candidate.costs.total < best.costs.total) {
          best = std::move(candidate);
          found = true;
        }
      } else if (result.status != SolveStatus::Infeasible) {
        throw BackendError("oracle subproblem failed (" +
                           std::string(solve_status_name(result.status)) +
                           "): " + result.diagnostics);
      }

      int t = inst.periods - 1;
      while (t >= 0 && ++pick[static_cast<std::size_t>(t)] ==
                           choices[static_cast<std::size_t>(t)].size()) {
        pick[static_cast<std::size_t>(t)] = 0;
        --t;
      }
      if (t < 0) break;
    }
  }

  if (!found) throw BackendError("oracle found no feasible discrete structure");
  return best;
}

}  // namespace zdflp

#endif  // ZDFLP_EVALUATE_HPP
