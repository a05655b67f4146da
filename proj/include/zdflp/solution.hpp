#ifndef ZDFLP_SOLUTION_HPP
#define ZDFLP_SOLUTION_HPP

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "zdflp/common.hpp"

namespace zdflp {

struct CostBreakdown {
  double material = 0.0;
  double fixed_relayout = 0.0;
  double variable_relayout = 0.0;
  double zone_boundary = 0.0;
  double total = 0.0;
};

struct ZoneGeom {
  double west = 0.0;
  double east = 0.0;
  double south = 0.0;
  double north = 0.0;

  double bound(Side s) const {
    switch (s) {
      case Side::East: return east;
      case Side::West: return west;
      case Side::South: return south;
      default: return north;
    }
  }
};

// Decoded geometry of one period: zone rectangles and orientations,
// assignments, the active intra-zone orderings (pairs with z = 1), and per
// department the center, half side lengths and I/O point.
struct PeriodLayout {
  std::map<int, ZoneGeom> zone_bounds;
  std::map<int, Axis> zone_orientation;
  std::map<std::string, int> assignment;
  std::set<std::tuple<std::string, std::string, Axis>> ordering;
  std::map<std::string, std::array<double, 2>> dept_center;
  std::map<std::string, std::array<double, 2>> dept_half;
  std::map<std::string, std::array<double, 2>> io_point;
};

// A multi-period layout plus its recomputed cost breakdown. Facility
// dimensions and replacement metadata ride along so that a solution document
// renders without the originating instance.
struct LayoutSolution {
  double facility_x = 0.0;
  double facility_y = 0.0;
  std::vector<PeriodLayout> periods;
  std::map<std::string, std::string> replaces;
  CostBreakdown costs;

  double total_cost() const { return costs.total; }
};

inline std::string serialize_solution(const LayoutSolution& sol) {
  using nlohmann::json;
  json doc;
  doc["facility"] = {{"len_x", sol.facility_x}, {"len_y", sol.facility_y}};
  doc["periods"] = json::array();
  for (std::size_t t = 0; t < sol.periods.size(); ++t) {
    const PeriodLayout& p = sol.periods[t];
    json jp;
    jp["t"] = static_cast<int>(t) + 1;
    jp["zones"] = json::array();
    for (const auto& [k, g] : p.zone_bounds)
      jp["zones"].push_back({{"zone", k + 1},
                             {"west", g.west},
                             {"east", g.east},
                             {"south", g.south},
                             {"north", g.north},
                             {"orientation", axis_name(p.zone_orientation.at(k))}});
    jp["departments"] = json::array();
    for (const auto& [id, zone] : p.assignment) {
      json jd;
      jd["id"] = id;
      jd["zone"] = zone + 1;
      jd["center"] = {p.dept_center.at(id)[0], p.dept_center.at(id)[1]};
      jd["half"] = {p.dept_half.at(id)[0], p.dept_half.at(id)[1]};
      jd["io"] = {p.io_point.at(id)[0], p.io_point.at(id)[1]};
      auto rep = sol.replaces.find(id);
      if (rep != sol.replaces.end()) jd["replaces"] = rep->second;
      jp["departments"].push_back(std::move(jd));
    }
    jp["ordering"] = json::array();
    for (const auto& [from, to, axis] : p.ordering)
      jp["ordering"].push_back(
          {{"before", from}, {"after", to}, {"axis", axis_name(axis)}});
    doc["periods"].push_back(std::move(jp));
  }
  doc["costs"] = {{"material", sol.costs.material},
                  {"fixed_relayout", sol.costs.fixed_relayout},
                  {"variable_relayout", sol.costs.variable_relayout},
                  {"zone_boundary", sol.costs.zone_boundary},
                  {"total", sol.costs.total}};
  return doc.dump(2) + "\n";
}

inline LayoutSolution parse_solution(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("solution document is not valid JSON: ") + e.what());
  }
  LayoutSolution sol;
  try {
    sol.facility_x = doc.at("facility").at("len_x").get<double>();
    sol.facility_y = doc.at("facility").at("len_y").get<double>();
    for (const auto& jp : doc.at("periods")) {
      PeriodLayout p;
      for (const auto& jz : jp.at("zones")) {
        const int k = jz.at("zone").get<int>() - 1;
        p.zone_bounds[k] = {jz.at("west").get<double>(), jz.at("east").get<double>(),
                            jz.at("south").get<double>(), jz.at("north").get<double>()};
        p.zone_orientation[k] =
            jz.at("orientation").get<std::string>() == "x" ? Axis::X : Axis::Y;
      }
      for (const auto& jd : jp.at("departments")) {
        const std::string id = jd.at("id").get<std::string>();
        p.assignment[id] = jd.at("zone").get<int>() - 1;
        p.dept_center[id] = {jd.at("center")[0].get<double>(),
                             jd.at("center")[1].get<double>()};
        p.dept_half[id] = {jd.at("half")[0].get<double>(), jd.at("half")[1].get<double>()};
        p.io_point[id] = {jd.at("io")[0].get<double>(), jd.at("io")[1].get<double>()};
        if (jd.contains("replaces"))
          sol.replaces[id] = jd.at("replaces").get<std::string>();
      }
      if (jp.contains("ordering"))
        for (const auto& jo : jp.at("ordering"))
          p.ordering.insert({jo.at("before").get<std::string>(),
                             jo.at("after").get<std::string>(),
                             jo.at("axis").get<std::string>() == "x" ? Axis::X : Axis::Y});
      sol.periods.push_back(std::move(p));
    }
    const auto& jc = doc.at("costs");
    sol.costs.material = jc.at("material").get<double>();
    sol.costs.fixed_relayout = jc.at("fixed_relayout").get<double>();
    sol.costs.variable_relayout = jc.at("variable_relayout").get<double>();
    sol.costs.zone_boundary = jc.at("zone_boundary").get<double>();
    sol.costs.total = jc.at("total").get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed solution document: ") + e.what());
  }
  return sol;
}

inline LayoutSolution load_solution_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open solution file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_solution(buf.str());
}

}  // namespace zdflp

#endif  // ZDFLP_SOLUTION_HPP
