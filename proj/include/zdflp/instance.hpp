#ifndef ZDFLP_INSTANCE_HPP
#define ZDFLP_INSTANCE_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "zdflp/common.hpp"

namespace zdflp {

constexpr int kDefaultDelta = 20;

struct Facility {
  double len_x = 0.0;  // L^x
  double len_y = 0.0;  // L^y

  double side(Axis a) const { return a == Axis::X ? len_x : len_y; }
};

// Per-period space requirement of one department: minimum area plus the
// allowed side-length window on each axis.
struct DeptRequirement {
  double area = 0.0;
  std::array<double, 2> min_side{0.0, 0.0};
  std::array<double, 2> max_side{0.0, 0.0};
};

struct Department {
  std::string id;
  std::string replaces;  // rendering metadata only; empty when absent
  std::map<int, DeptRequirement> periods;  // keyed by 0-based period

  bool active(int t) const { return periods.count(t) != 0; }
  const DeptRequirement& at(int t) const { return periods.at(t); }
};

struct FlowRecord {
  std::string from;
  std::string to;
  int period = 0;  // 0-based
  double flow = 0.0;
  double unit_cost = 0.0;
};

struct CostParams {
  std::map<std::pair<std::string, int>, double> fixed_rearrange;  // R_it
  std::map<std::pair<std::string, int>, double> unit_rearrange;   // Q_it
  std::map<std::pair<int, int>, double> zone_boundary;            // B_kt

  double fixed(const std::string& dept, int t) const {
    auto it = fixed_rearrange.find({dept, t});
    return it == fixed_rearrange.end() ? 0.0 : it->second;
  }
  double unit(const std::string& dept, int t) const {
    auto it = unit_rearrange.find({dept, t});
    return it == unit_rearrange.end() ? 0.0 : it->second;
  }
  double boundary(int zone, int t) const {
    auto it = zone_boundary.find({zone, t});
    return it == zone_boundary.end() ? 0.0 : it->second;
  }
};

struct OrientationPin {
  int zone = 0;
  Axis orientation = Axis::X;  // axis along which the zone's departments line up
};

struct PrecedencePin {
  int before = 0;
  int after = 0;
  Axis axis = Axis::X;
  int period = 0;
};

struct AssignmentPin {
  std::string department;
  int zone = 0;
  int period = 0;
};

struct ZoneConfig {
  int count = 1;
  std::vector<OrientationPin> pinned_orientation;
  std::vector<PrecedencePin> pinned_precedence;
  std::vector<AssignmentPin> pinned_assignment;
};

// A complete problem input. Immutable after construction; periods and zones
// are 0-based internally and 1-based in files and messages.
struct Instance {
  Facility facility;
  int periods = 1;
  ZoneConfig zones;
  std::vector<Department> departments;
  std::vector<FlowRecord> flows;
  CostParams costs;
  int delta = kDefaultDelta;

  int department_index(const std::string& id) const {
    for (std::size_t i = 0; i < departments.size(); ++i)
      if (departments[i].id == id) return static_cast<int>(i);
    return -1;
  }

  bool department_active(int dept, int t) const {
    return dept >= 0 && dept < static_cast<int>(departments.size()) &&
           departments[static_cast<std::size_t>(dept)].active(t);
  }

  // Omega_t as indices into `departments`, ascending.
  std::vector<int> active_departments(int t) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < departments.size(); ++i)
      if (departments[i].active(t)) out.push_back(static_cast<int>(i));
    return out;
  }
};

// One member of P_t: an unordered department pair with the combined directed
// flow-cost weight w_ijt = C_ijt*f_ijt + C_jit*f_jit.
struct FlowPair {
  int i = 0;  // department index, i < j
  int j = 0;
  double weight = 0.0;
};

inline std::vector<FlowPair> flow_pairs(const Instance& inst, int t) {
  std::map<std::pair<int, int>, double> acc;
  for (const auto& rec : inst.flows) {
    if (rec.period != t) continue;
    int i = inst.department_index(rec.from);
    int j = inst.department_index(rec.to);
    if (i < 0 || j < 0 || i == j) continue;
    if (!inst.department_active(i, t) || !inst.department_active(j, t)) continue;
    if (i > j) std::swap(i, j);
    acc[{i, j}] += rec.flow * rec.unit_cost;
  }
  std::vector<FlowPair> out;
  for (const auto& [key, w] : acc)
    if (w > 0.0) out.push_back({key.first, key.second, w});
  return out;
}

namespace detail {

inline std::string dept_label(const Department& d) { return "department '" + d.id + "'"; }

// Cycle detection on a per-axis, per-period precedence digraph.
inline bool has_cycle(int zone_count, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(zone_count));
  for (auto [a, b] : edges) adj[static_cast<std::size_t>(a)].push_back(b);
  // 0 unseen, 1 on stack, 2 done
  std::vector<int> state(static_cast<std::size_t>(zone_count), 0);
  std::vector<std::pair<int, int>> stack;
  for (int start = 0; start < zone_count; ++start) {
    if (state[static_cast<std::size_t>(start)] != 0) continue;
    stack.push_back({start, 0});
    state[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      auto& out = adj[static_cast<std::size_t>(node)];
      if (next < static_cast<int>(out.size())) {
        int child = out[static_cast<std::size_t>(next++)];
        if (state[static_cast<std::size_t>(child)] == 1) return true;
        if (state[static_cast<std::size_t>(child)] == 0) {
          state[static_cast<std::size_t>(child)] = 1;
          stack.push_back({child, 0});
        }
      } else {
        state[static_cast<std::size_t>(node)] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace detail

// Checks every instance invariant; returns one entry per violation. Pure and
// order-stable: identical input gives an identical list.
inline std::vector<ValidationIssue> validate(const Instance& inst) {
  std::vector<ValidationIssue> out;
  auto add = [&out](const std::string& code, const std::string& msg) {
    out.push_back({code, msg});
  };

  if (!(inst.facility.len_x > 0.0) || !(inst.facility.len_y > 0.0))
    add("facility-dims", "facility side lengths must be positive");
  if (inst.periods < 1) add("period-count", "instance must have at least one period");
  if (inst.delta < 2) add("delta", "delta must be at least 2 support points");
  if (inst.zones.count < 1) add("zone-count", "zone count must be at least 1");

  std::set<std::string> seen_ids;
  for (const auto& d : inst.departments) {
    if (!seen_ids.insert(d.id).second)
      add("duplicate-dept-id", "duplicate department id '" + d.id + "'");
    if (d.periods.empty())
      add("active-empty", detail::dept_label(d) + " has no active periods");
    for (const auto& [t, req] : d.periods) {
      if (t < 0 || t >= inst.periods) {
        add("period-range", detail::dept_label(d) + " references period " +
                                std::to_string(t + 1) + " outside the horizon");
        continue;
      }
      for (Axis r : kAxes) {
        const double lo = req.min_side[static_cast<int>(r)];
        const double hi = req.max_side[static_cast<int>(r)];
        if (!(lo > 0.0) || lo > hi || hi > inst.facility.side(r))
          add("side-bounds", detail::dept_label(d) + " period " + std::to_string(t + 1) +
                                 ": requires 0 < min_side <= max_side <= facility on " +
                                 axis_name(r) + "-axis");
      }
      const double min_area = req.min_side[0] * req.min_side[1];
      const double max_area = req.max_side[0] * req.max_side[1];
      if (req.area < min_area || req.area > max_area)
        add("area-bounds", detail::dept_label(d) + " period " + std::to_string(t + 1) +
                               ": area " + format_double(req.area) +
                               " not achievable within side bounds");
    }
  }

  for (int t = 0; t < inst.periods; ++t) {
    const auto active = inst.active_departments(t);
    if (static_cast<int>(active.size()) < inst.zones.count)
      add("zone-count", "zone count exceeds active departments in period " +
                            std::to_string(t + 1));
    double total = 0.0;
    for (int i : active) total += inst.departments[static_cast<std::size_t>(i)].at(t).area;
    if (total > inst.facility.len_x * inst.facility.len_y)
      add("area-capacity", "minimum areas exceed the facility in period " +
                               std::to_string(t + 1));
  }

  std::size_t flow_idx = 0;
  for (const auto& rec : inst.flows) {
    const std::string where = "flow record " + std::to_string(flow_idx++);
    if (rec.flow < 0.0 || rec.unit_cost < 0.0)
      add("flow-negative", where + ": flow and unit_cost must be nonnegative");
    if (rec.period < 0 || rec.period >= inst.periods) {
      add("period-range", where + ": period out of range");
      continue;
    }
    const int i = inst.department_index(rec.from);
    const int j = inst.department_index(rec.to);
    if (i < 0) add("flow-unknown-dept", where + ": unknown department '" + rec.from + "'");
    if (j < 0) add("flow-unknown-dept", where + ": unknown department '" + rec.to + "'");
    if (i >= 0 && !inst.department_active(i, rec.period))
      add("flow-inactive", where + ": department '" + rec.from + "' inactive in period " +
                               std::to_string(rec.period + 1));
    if (j >= 0 && !inst.department_active(j, rec.period))
      add("flow-inactive", where + ": department '" + rec.to + "' inactive in period " +
                               std::to_string(rec.period + 1));
  }

  auto check_cost_period = [&](int t, const std::string& where) {
    if (t < 1 || t >= inst.periods)
      add("cost-period", where + ": rearrangement costs exist only for periods 2.." +
                             std::to_string(inst.periods));
  };
  for (const auto& [key, v] : inst.costs.fixed_rearrange) {
    if (v < 0.0) add("cost-negative", "fixed_rearrange for '" + key.first + "' is negative");
    if (inst.department_index(key.first) < 0)
      add("cost-unknown-dept", "fixed_rearrange references unknown department '" +
                                   key.first + "'");
    check_cost_period(key.second, "fixed_rearrange for '" + key.first + "'");
  }
  for (const auto& [key, v] : inst.costs.unit_rearrange) {
    if (v < 0.0) add("cost-negative", "unit_rearrange for '" + key.first + "' is negative");
    if (inst.department_index(key.first) < 0)
      add("cost-unknown-dept", "unit_rearrange references unknown department '" +
                                   key.first + "'");
    check_cost_period(key.second, "unit_rearrange for '" + key.first + "'");
  }
  for (const auto& [key, v] : inst.costs.zone_boundary) {
    if (v < 0.0)
      add("cost-negative", "zone_boundary for zone " + std::to_string(key.first + 1) +
                               " is negative");
    if (key.first < 0 || key.first >= inst.zones.count)
      add("zone-range", "zone_boundary references zone " + std::to_string(key.first + 1));
    check_cost_period(key.second, "zone_boundary for zone " + std::to_string(key.first + 1));
  }

  for (const auto& pin : inst.zones.pinned_orientation)
    if (pin.zone < 0 || pin.zone >= inst.zones.count)
      add("zone-range", "orientation pin references zone " + std::to_string(pin.zone + 1));

  // At most one precedence pin per unordered zone pair and period: the zone
  // non-overlap equality admits exactly one active direction.
  std::set<std::tuple<int, int, int>> pair_pins;
  for (const auto& pin : inst.zones.pinned_precedence) {
    if (pin.before < 0 || pin.before >= inst.zones.count || pin.after < 0 ||
        pin.after >= inst.zones.count || pin.before == pin.after) {
      add("zone-range", "precedence pin references an invalid zone pair");
      continue;
    }
    if (pin.period < 0 || pin.period >= inst.periods) {
      add("period-range", "precedence pin references an invalid period");
      continue;
    }
    auto key = std::make_tuple(std::min(pin.before, pin.after),
                               std::max(pin.before, pin.after), pin.period);
    if (!pair_pins.insert(key).second)
      add("precedence-pin-conflict",
          "multiple precedence pins for zones " + std::to_string(pin.before + 1) + "," +
              std::to_string(pin.after + 1) + " in period " + std::to_string(pin.period + 1));
  }
  for (int t = 0; t < inst.periods; ++t) {
    for (Axis r : kAxes) {
      std::vector<std::pair<int, int>> edges;
      for (const auto& pin : inst.zones.pinned_precedence)
        if (pin.period == t && pin.axis == r && pin.before >= 0 &&
            pin.before < inst.zones.count && pin.after >= 0 && pin.after < inst.zones.count)
          edges.push_back({pin.before, pin.after});
      if (detail::has_cycle(inst.zones.count, edges))
        add("precedence-cycle", "precedence cycle on " + std::string(axis_name(r)) +
                                    "-axis in period " + std::to_string(t + 1));
    }
  }

  std::set<std::pair<std::string, int>> assigned;
  for (const auto& pin : inst.zones.pinned_assignment) {
    if (pin.zone < 0 || pin.zone >= inst.zones.count)
      add("zone-range", "assignment pin for '" + pin.department + "' references zone " +
                            std::to_string(pin.zone + 1));
    const int i = inst.department_index(pin.department);
    if (i < 0) {
      add("assignment-pin-invalid", "assignment pin references unknown department '" +
                                        pin.department + "'");
      continue;
    }
    if (pin.period < 0 || pin.period >= inst.periods ||
        !inst.department_active(i, pin.period)) {
      add("assignment-pin-invalid", "assignment pin for '" + pin.department +
                                        "' references an inactive period");
      continue;
    }
    if (!assigned.insert({pin.department, pin.period}).second)
      add("assignment-pin-duplicate", "department '" + pin.department +
                                          "' pinned to two zones in period " +
                                          std::to_string(pin.period + 1));
  }

  return out;
}

namespace detail {

using nlohmann::json;

inline const json& require(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field '" + path + key + "'");
  return *it;
}

inline double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError("expected a number at '" + path + "'");
  return j.get<double>();
}

inline int int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError("expected an integer at '" + path + "'");
  return j.get<int>();
}

inline std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError("expected a string at '" + path + "'");
  return j.get<std::string>();
}

inline Axis axis_at(const json& j, const std::string& path) {
  const std::string s = string_at(j, path);
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  throw ParseError("expected \"x\" or \"y\" at '" + path + "'");
}

inline const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("expected an array at '" + path + "'");
  return j;
}

inline std::array<double, 2> pair_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("expected a [x, y] pair at '" + path + "'");
  return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

}  // namespace detail

// Parses the instance document, applies defaults, and validates. Schema
// problems raise ParseError with the offending field; invariant breaches raise
// ValidationError carrying every violation.
inline Instance parse_instance(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");

  Instance inst;

  const json& fac = detail::require(doc, "facility", "");
  inst.facility.len_x = detail::number_at(detail::require(fac, "len_x", "facility."),
                                          "facility.len_x");
  inst.facility.len_y = detail::number_at(detail::require(fac, "len_y", "facility."),
                                          "facility.len_y");
  inst.periods = detail::int_at(detail::require(doc, "periods", ""), "periods");
  if (doc.contains("delta")) inst.delta = detail::int_at(doc["delta"], "delta");

  const json& zones = detail::require(doc, "zones", "");
  inst.zones.count = detail::int_at(detail::require(zones, "count", "zones."), "zones.count");
  if (zones.contains("pinned_orientation")) {
    const json& arr = detail::array_at(zones["pinned_orientation"], "zones.pinned_orientation");
    for (std::size_t n = 0; n < arr.size(); ++n) {
      const std::string path = "zones.pinned_orientation[" + std::to_string(n) + "].";
      OrientationPin pin;
      pin.zone = detail::int_at(detail::require(arr[n], "zone", path), path + "zone") - 1;
      pin.orientation =
          detail::axis_at(detail::require(arr[n], "orientation", path), path + "orientation");
      inst.zones.pinned_orientation.push_back(pin);
    }
  }
  if (zones.contains("pinned_precedence")) {
    const json& arr = detail::array_at(zones["pinned_precedence"], "zones.pinned_precedence");
    for (std::size_t n = 0; n < arr.size(); ++n) {
      const std::string path = "zones.pinned_precedence[" + std::to_string(n) + "].";
      PrecedencePin pin;
      pin.before = detail::int_at(detail::require(arr[n], "before", path), path + "before") - 1;
      pin.after = detail::int_at(detail::require(arr[n], "after", path), path + "after") - 1;
      pin.axis = detail::axis_at(detail::require(arr[n], "axis", path), path + "axis");
      pin.period = detail::int_at(detail::require(arr[n], "period", path), path + "period") - 1;
      inst.zones.pinned_precedence.push_back(pin);
    }
  }
  if (zones.contains("pinned_assignment")) {
    const json& arr = detail::array_at(zones["pinned_assignment"], "zones.pinned_assignment");
    for (std::size_t n = 0; n < arr.size(); ++n) {
      const std::string path = "zones.pinned_assignment[" + std::to_string(n) + "].";
      AssignmentPin pin;
      pin.department =
          detail::string_at(detail::require(arr[n], "department", path), path + "department");
      pin.zone = detail::int_at(detail::require(arr[n], "zone", path), path + "zone") - 1;
      pin.period = detail::int_at(detail::require(arr[n], "period", path), path + "period") - 1;
      inst.zones.pinned_assignment.push_back(pin);
    }
  }

  const json& deps = detail::array_at(detail::require(doc, "departments", ""), "departments");
  for (std::size_t n = 0; n < deps.size(); ++n) {
    const std::string path = "departments[" + std::to_string(n) + "].";
    Department d;
    d.id = detail::string_at(detail::require(deps[n], "id", path), path + "id");
    if (deps[n].contains("replaces"))
      d.replaces = detail::string_at(deps[n]["replaces"], path + "replaces");
    const json& pers = detail::array_at(detail::require(deps[n], "periods", path),
                                        path + "periods");
    for (std::size_t m = 0; m < pers.size(); ++m) {
      const std::string ppath = path + "periods[" + std::to_string(m) + "].";
      const int t = detail::int_at(detail::require(pers[m], "t", ppath), ppath + "t") - 1;
      DeptRequirement req;
      req.area = detail::number_at(detail::require(pers[m], "area", ppath), ppath + "area");
      req.min_side =
          detail::pair_at(detail::require(pers[m], "min_side", ppath), ppath + "min_side");
      req.max_side =
          detail::pair_at(detail::require(pers[m], "max_side", ppath), ppath + "max_side");
      if (d.periods.count(t))
        throw ParseError("duplicate period entry at '" + ppath + "t'");
      d.periods[t] = req;
    }
    inst.departments.push_back(std::move(d));
  }

  if (doc.contains("flows")) {
    const json& arr = detail::array_at(doc["flows"], "flows");
    for (std::size_t n = 0; n < arr.size(); ++n) {
      const std::string path = "flows[" + std::to_string(n) + "].";
      FlowRecord rec;
      rec.from = detail::string_at(detail::require(arr[n], "from", path), path + "from");
      rec.to = detail::string_at(detail::require(arr[n], "to", path), path + "to");
      rec.period = detail::int_at(detail::require(arr[n], "period", path), path + "period") - 1;
      rec.flow = detail::number_at(detail::require(arr[n], "flow", path), path + "flow");
      rec.unit_cost =
          detail::number_at(detail::require(arr[n], "unit_cost", path), path + "unit_cost");
      inst.flows.push_back(std::move(rec));
    }
  }

  if (doc.contains("costs")) {
    const json& costs = doc["costs"];
    auto read_dept_costs = [&](const char* key,
                               std::map<std::pair<std::string, int>, double>& dst) {
      if (!costs.contains(key)) return;
      const json& arr = detail::array_at(costs[key], std::string("costs.") + key);
      for (std::size_t n = 0; n < arr.size(); ++n) {
        const std::string path = "costs." + std::string(key) + "[" + std::to_string(n) + "].";
        const std::string dept =
            detail::string_at(detail::require(arr[n], "department", path), path + "department");
        const int t = detail::int_at(detail::require(arr[n], "period", path), path + "period") - 1;
        const double v =
            detail::number_at(detail::require(arr[n], "value", path), path + "value");
        dst[{dept, t}] = v;
      }
    };
    read_dept_costs("fixed_rearrange", inst.costs.fixed_rearrange);
    read_dept_costs("unit_rearrange", inst.costs.unit_rearrange);
    if (costs.contains("zone_boundary")) {
      const json& arr = detail::array_at(costs["zone_boundary"], "costs.zone_boundary");
      for (std::size_t n = 0; n < arr.size(); ++n) {
        const std::string path = "costs.zone_boundary[" + std::to_string(n) + "].";
        const int zone = detail::int_at(detail::require(arr[n], "zone", path), path + "zone") - 1;
        const int t = detail::int_at(detail::require(arr[n], "period", path), path + "period") - 1;
        const double v =
            detail::number_at(detail::require(arr[n], "value", path), path + "value");
        inst.costs.zone_boundary[{zone, t}] = v;
      }
    }
  }

  auto issues = validate(inst);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return inst;
}

inline std::string serialize_instance(const Instance& inst) {
  using detail::json;
  json doc;
  doc["facility"] = {{"len_x", inst.facility.len_x}, {"len_y", inst.facility.len_y}};
  doc["periods"] = inst.periods;
  doc["delta"] = inst.delta;

  json zones;
  zones["count"] = inst.zones.count;
  zones["pinned_orientation"] = json::array();
  for (const auto& pin : inst.zones.pinned_orientation)
    zones["pinned_orientation"].push_back(
        {{"zone", pin.zone + 1}, {"orientation", axis_name(pin.orientation)}});
  zones["pinned_precedence"] = json::array();
  for (const auto& pin : inst.zones.pinned_precedence)
    zones["pinned_precedence"].push_back({{"before", pin.before + 1},
                                          {"after", pin.after + 1},
                                          {"axis", axis_name(pin.axis)},
                                          {"period", pin.period + 1}});
  zones["pinned_assignment"] = json::array();
  for (const auto& pin : inst.zones.pinned_assignment)
    zones["pinned_assignment"].push_back({{"department", pin.department},
                                          {"zone", pin.zone + 1},
                                          {"period", pin.period + 1}});
  doc["zones"] = std::move(zones);

  doc["departments"] = json::array();
  for (const auto& d : inst.departments) {
    json dep;
    dep["id"] = d.id;
    if (!d.replaces.empty()) dep["replaces"] = d.replaces;
    dep["periods"] = json::array();
    for (const auto& [t, req] : d.periods)
      dep["periods"].push_back({{"t", t + 1},
                                {"area", req.area},
                                {"min_side", {req.min_side[0], req.min_side[1]}},
                                {"max_side", {req.max_side[0], req.max_side[1]}}});
    doc["departments"].push_back(std::move(dep));
  }

  doc["flows"] = json::array();
  for (const auto& rec : inst.flows)
    doc["flows"].push_back({{"from", rec.from},
                            {"to", rec.to},
                            {"period", rec.period + 1},
                            {"flow", rec.flow},
                            {"unit_cost", rec.unit_cost}});

  json costs;
  costs["fixed_rearrange"] = json::array();
  for (const auto& [key, v] : inst.costs.fixed_rearrange)
    costs["fixed_rearrange"].push_back(
        {{"department", key.first}, {"period", key.second + 1}, {"value", v}});
  costs["unit_rearrange"] = json::array();
  for (const auto& [key, v] : inst.costs.unit_rearrange)
    costs["unit_rearrange"].push_back(
        {{"department", key.first}, {"period", key.second + 1}, {"value", v}});
  costs["zone_boundary"] = json::array();
  for (const auto& [key, v] : inst.costs.zone_boundary)
    costs["zone_boundary"].push_back(
        {{"zone", key.first + 1}, {"period", key.second + 1}, {"value", v}});
  doc["costs"] = std::move(costs);

  return doc.dump(2) + "\n";
}

inline Instance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace zdflp

#endif  // ZDFLP_INSTANCE_HPP
