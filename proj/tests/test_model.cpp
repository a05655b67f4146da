#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "zdflp/model.hpp"
#include "zdflp/mps.hpp"

using namespace zdflp;
using zdflp_test::make_uniform_instance;

namespace {

int count_rows(const ModelSpec& m, const std::string& tag_prefix) {
  int n = 0;
  for (const auto& row : m.constraints)
    if (row.tag.rfind(tag_prefix, 0) == 0) ++n;
  return n;
}

int count_vars(const ModelSpec& m, VarKind kind) {
  int n = 0;
  for (const auto& v : m.variables)
    if (v.kind == kind) ++n;
  return n;
}

}  // namespace

TEST_CASE("support points span the half-width range evenly") {
  Instance inst = make_uniform_instance(1, 1, 1, false);
  inst.departments[0].periods[0] = {8.0, {2.0, 1.0}, {6.0, 8.0}};
  inst.delta = 3;
  const SupportPoints sp = make_support_points(inst);
  const auto& pts = sp.points.at({0, 0});
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == Catch::Approx(1.0));
  CHECK(pts[1] == Catch::Approx(2.0));
  CHECK(pts[2] == Catch::Approx(3.0));
}

TEST_CASE("square pin degenerates to a single repeated support point") {
  Instance inst = make_uniform_instance(1, 1, 1, false);
  inst.departments[0].periods[0] = {16.0, {4.0, 4.0}, {4.0, 4.0}};
  inst.delta = 5;
  const SupportPoints sp = make_support_points(inst);
  const auto& pts = sp.points.at({0, 0});
  REQUIRE(pts.size() == 5);
  for (double p : pts) CHECK(p == Catch::Approx(2.0));
}

TEST_CASE("delta below two is refused") {
  Instance inst = make_uniform_instance(1, 1, 1, false);
  inst.delta = 1;
  CHECK_THROWS_AS(make_support_points(inst), std::invalid_argument);
}

TEST_CASE("area tangent touches the hyperbola at its support point") {
  // a = 4, support half-width 1: row is 4 l^x + 4 l^y >= 8, tight at the
  // 2x2 square (l^x = l^y = 1).
  const double a = 4.0, x = 1.0;
  const double lhs = a * 1.0 + 4.0 * x * x * 1.0;
  CHECK(lhs == Catch::Approx(2.0 * a * x));
  // and strictly feasible for any w*h >= a rectangle
  const double lx = 2.0, ly = 0.5;  // 4x1 rectangle
  CHECK(a * lx + 4.0 * x * x * ly >= 2.0 * a * x - 1e-12);
}

TEST_CASE("big-M constants are the facility side lengths per axis") {
  Instance inst = make_uniform_instance(1, 1, 1, false);
  inst.facility = {10.0, 8.0};
  CHECK(big_m(inst, Axis::X) == Catch::Approx(10.0));
  CHECK(big_m(inst, Axis::Y) == Catch::Approx(8.0));
  CHECK(big_m(inst, Side::East) == Catch::Approx(10.0));
  CHECK(big_m(inst, Side::West) == Catch::Approx(10.0));
  CHECK(big_m(inst, Side::North) == Catch::Approx(8.0));
  CHECK(big_m(inst, Side::South) == Catch::Approx(8.0));
  inst.facility = {10.0, 10.0};
  CHECK(big_m(inst, Axis::Y) == Catch::Approx(10.0));
}

TEST_CASE("single department model has exactly the hand-counted shape") {
  Instance inst = make_uniform_instance(1, 1, 1, false);
  const ModelSpec m = build_full_model(inst);

  // 1 beta + 1 b + 2 l + 2 c + 2 g + 4 q = 12 variables
  CHECK(m.variables.size() == 12);
  CHECK(count_vars(m, VarKind::Beta) == 1);
  CHECK(count_vars(m, VarKind::B) == 1);
  CHECK(count_vars(m, VarKind::L) == 2);
  CHECK(count_vars(m, VarKind::C) == 2);
  CHECK(count_vars(m, VarKind::G) == 2);
  CHECK(count_vars(m, VarKind::Q) == 4);
  CHECK(count_vars(m, VarKind::Gamma) == 0);
  CHECK(count_vars(m, VarKind::Z) == 0);
  CHECK(count_vars(m, VarKind::D) == 0);
  CHECK(count_vars(m, VarKind::U) == 0);
  CHECK(count_vars(m, VarKind::V) == 0);
  CHECK(count_vars(m, VarKind::O) == 0);

  CHECK(count_rows(m, "eq32") == inst.delta);
  CHECK(count_rows(m, "eq13") == 0);
  CHECK(count_rows(m, "eq16") == 0);
  CHECK(count_rows(m, "eq24") == 0);
  CHECK(count_rows(m, "eq29") == 0);
  CHECK(count_rows(m, "eq30") == 0);
  CHECK(count_rows(m, "eq31") == 0);
  CHECK(m.objective.empty());
}

TEST_CASE("two departments in one zone give the published ordering row counts") {
  const Instance inst = make_uniform_instance(2, 1, 1);
  const ModelSpec m = build_full_model(inst);
  CHECK(count_rows(m, "eq13") == 1);
  CHECK(count_rows(m, "eq14") == 1);
  CHECK(count_rows(m, "eq13") + count_rows(m, "eq14") == 2);
  CHECK(count_rows(m, "eq16") == 4);  // two ordered pairs, two axes
  CHECK(count_rows(m, "eq15") == 2);
  CHECK(count_rows(m, "eq17") == 2);
  CHECK(count_rows(m, "eq18") == 1);
  // d variables exist for the single flow pair on both axes
  CHECK(count_vars(m, VarKind::D) == 2);
  CHECK(count_rows(m, "eq26") == 4);
}

TEST_CASE("objective coefficients of d equal the flow pair weights") {
  Instance inst = make_uniform_instance(3, 1, 1, false);
  inst.flows.push_back({"d1", "d2", 0, 5.0, 2.0});
  inst.flows.push_back({"d2", "d1", 0, 1.0, 3.0});
  inst.flows.push_back({"d2", "d3", 0, 2.0, 1.0});
  const ModelSpec m = build_full_model(inst);
  const auto pairs = flow_pairs(inst, 0);
  REQUIRE(pairs.size() == 2);
  for (const auto& p : pairs)
    for (Axis r : kAxes) {
      const int var = m.require_var(VarKind::D, {p.i, p.j, 0, static_cast<int>(r)});
      double coef = 0.0;
      for (const Term& term : m.objective)
        if (term.var == var) coef = term.coef;
      CHECK(coef == Catch::Approx(p.weight));
    }
}

TEST_CASE("objective references only d, v, u and o variables") {
  Instance inst = make_uniform_instance(3, 2, 2);
  inst.costs.fixed_rearrange[{"d1", 1}] = 2.0;
  inst.costs.unit_rearrange[{"d1", 1}] = 1.0;
  inst.costs.zone_boundary[{0, 1}] = 1.0;
  const ModelSpec m = build_full_model(inst);
  for (const Term& term : m.objective) {
    const VarKind kind = m.variables[static_cast<std::size_t>(term.var)].kind;
    const bool allowed = kind == VarKind::D || kind == VarKind::V || kind == VarKind::U ||
                         kind == VarKind::O;
    CHECK(allowed);
  }
}

TEST_CASE("every binary is [0,1] and geometry is bounded by the facility") {
  Instance inst = make_uniform_instance(3, 2, 2);
  const ModelSpec m = build_full_model(inst);
  const double cap = std::max(inst.facility.len_x, inst.facility.len_y);
  std::set<std::tuple<int, int, int, int, int>> seen;
  for (const auto& v : m.variables) {
    if (v.integral) {
      CHECK(v.lo == 0.0);
      CHECK(v.hi == 1.0);
    } else {
      CHECK(v.hi <= cap + 1e-12);
    }
    CHECK(seen.insert(v.key()).second);  // (kind, indices) unique
  }
  CHECK(std::is_sorted(m.variables.begin(), m.variables.end()));
}

TEST_CASE("side-length limits appear as l variable bounds") {
  Instance inst = make_uniform_instance(1, 1, 1, false);
  inst.departments[0].periods[0] = {6.0, {2.0, 1.5}, {5.0, 4.0}};
  const ModelSpec m = build_full_model(inst);
  const auto& lx = m.variables[static_cast<std::size_t>(m.require_var(VarKind::L, {0, 0, 0, -1}))];
  const auto& ly = m.variables[static_cast<std::size_t>(m.require_var(VarKind::L, {0, 0, 1, -1}))];
  CHECK(lx.lo == Catch::Approx(1.0));
  CHECK(lx.hi == Catch::Approx(2.5));
  CHECK(ly.lo == Catch::Approx(0.75));
  CHECK(ly.hi == Catch::Approx(2.0));
}

TEST_CASE("rearrangement rows exist only for consecutive active periods") {
  Instance inst = make_uniform_instance(2, 3, 1);
  // d2 skips the middle period: no history rows at t2 or t3 for it.
  inst.departments[1].periods.erase(1);
  inst.flows.clear();
  const ModelSpec m = build_full_model(inst);
  CHECK(count_vars(m, VarKind::V) == 2);  // d1 at t2, t3
  CHECK(count_vars(m, VarKind::U) == 4);
  CHECK(count_rows(m, "eq29") == 8);  // 2 transitions x 2 axes x 2 halves
  CHECK(count_rows(m, "eq30") == 8);
  CHECK(count_rows(m, "eq31") == 8);
  CHECK(count_rows(m, "eq24") == 2 * 4 * 2);  // (T-1) x sides x halves for one zone
}

TEST_CASE("zone precedence rows follow the index sets") {
  const Instance inst = make_uniform_instance(4, 1, 3);
  const ModelSpec m = build_full_model(inst);
  CHECK(count_rows(m, "eq4") == 3);       // unordered zone pairs
  CHECK(count_rows(m, "eq5") == 3);
  CHECK(count_rows(m, "eq6") == 6);       // ordered zone pairs
  CHECK(count_rows(m, "eq7") == 3);
  CHECK(count_rows(m, "eq8") == 6);
  CHECK(count_rows(m, "eq9") == 3);
  CHECK(count_rows(m, "eq10") == 3);
  CHECK(count_rows(m, "eq11") == 3);
  CHECK(count_rows(m, "eq12") == 3);
  CHECK(count_vars(m, VarKind::Gamma) == 12);
}

TEST_CASE("designer pins become fixings") {
  Instance inst = make_uniform_instance(3, 1, 2);
  inst.zones.pinned_orientation.push_back({0, Axis::Y});
  inst.zones.pinned_precedence.push_back({0, 1, Axis::X, 0});
  inst.zones.pinned_assignment.push_back({"d2", 1, 0});
  const ModelSpec m = build_full_model(inst);
  REQUIRE(m.fixings.size() == 3);
  std::map<int, double> fixed(m.fixings.begin(), m.fixings.end());
  CHECK(fixed.at(m.require_var(VarKind::Beta, {0, -1, -1, -1})) == 1.0);
  CHECK(fixed.at(m.require_var(VarKind::Gamma, {0, 1, 0, 0})) == 1.0);
  CHECK(fixed.at(m.require_var(VarKind::B, {1, 1, 0, -1})) == 1.0);
}

TEST_CASE("model construction is deterministic") {
  Instance inst = make_uniform_instance(4, 2, 2);
  inst.costs.zone_boundary[{0, 1}] = 2.0;
  const std::string a = write_mps(build_full_model(inst));
  const std::string b = write_mps(build_full_model(inst));
  CHECK(a == b);
}

TEST_CASE("tangent rows never cut off a feasible rectangle") {
  Instance inst = make_uniform_instance(1, 1, 1, false);
  inst.departments[0].periods[0] = {6.0, {1.5, 1.0}, {5.0, 4.5}};
  const auto& req = inst.departments[0].periods[0];
  const auto pts = make_support_points(inst).points.at({0, 0});
  std::mt19937_64 rng(7);
  auto unit = [&rng] {
    return static_cast<double>(rng()) / static_cast<double>(UINT64_MAX);
  };
  int kept = 0;
  while (kept < 500) {
    const double w = req.min_side[0] + unit() * (req.max_side[0] - req.min_side[0]);
    const double h = req.min_side[1] + unit() * (req.max_side[1] - req.min_side[1]);
    if (w * h < req.area) continue;
    ++kept;
    for (double x : pts) {
      // a l^x + 4 x^2 l^y >= 2 a x with half side lengths
      const double lhs = req.area * (w / 2.0) + 4.0 * x * x * (h / 2.0);
      CHECK(lhs >= 2.0 * req.area * x - 1e-9);
    }
  }
}

TEST_CASE("restricted model fixes exactly the complement of the free set") {
  const Instance inst = make_uniform_instance(5, 3, 3);
  const ModelSpec full = build_full_model(inst);

  // Fabricate a feasible-shaped incumbent (geometry values are irrelevant for
  // counting fixings).
  LayoutSolution incumbent;
  incumbent.facility_x = inst.facility.len_x;
  incumbent.facility_y = inst.facility.len_y;
  for (int t = 0; t < inst.periods; ++t) {
    PeriodLayout p;
    for (int k = 0; k < inst.zones.count; ++k) {
      p.zone_bounds[k] = {0.0, 20.0, 6.0 * k, 6.0 * k + 6.0};
      p.zone_orientation[k] = Axis::X;
    }
    for (int i = 0; i < 5; ++i) {
      const std::string id = inst.departments[static_cast<std::size_t>(i)].id;
      p.assignment[id] = std::min(i, inst.zones.count - 1);
      p.dept_center[id] = {2.0 + 3.0 * i, 3.0};
      p.dept_half[id] = {1.0, 1.0};
      p.io_point[id] = {2.0 + 3.0 * i, 3.0};
    }
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (i < j && p.assignment.at("d" + std::to_string(i + 1)) ==
                         p.assignment.at("d" + std::to_string(j + 1)))
          p.ordering.insert({"d" + std::to_string(i + 1), "d" + std::to_string(j + 1),
                             Axis::X});
    incumbent.periods.push_back(std::move(p));
  }

  SECTION("empty free set fixes every z, b and l") {
    const ModelSpec restricted = build_restricted_model(inst, incumbent, {});
    int zbl = 0;
    for (const auto& v : restricted.variables)
      if (v.kind == VarKind::Z || v.kind == VarKind::B || v.kind == VarKind::L) ++zbl;
    CHECK(static_cast<int>(restricted.fixings.size()) == zbl);
    for (const auto& [var, value] : restricted.fixings) {
      const VarKind kind = restricted.variables[static_cast<std::size_t>(var)].kind;
      const bool fixable = kind == VarKind::Z || kind == VarKind::B || kind == VarKind::L;
      CHECK(fixable);
    }
  }

  SECTION("U1 on department 3, period 2 leaves 16 z + 3 b + 2 l unfixed") {
    VariableSet u1;
    const int dept = 2, t = 1;
    for (int j = 0; j < 5; ++j) {
      if (j == dept) continue;
      for (Axis r : kAxes) {
        u1.z.insert({dept, j, t, static_cast<int>(r)});
        u1.z.insert({j, dept, t, static_cast<int>(r)});
      }
    }
    for (int k = 0; k < 3; ++k) u1.b.insert({dept, k, t});
    for (Axis r : kAxes) u1.l.insert({dept, t, static_cast<int>(r)});
    CHECK(u1.z.size() == 16);
    CHECK(u1.b.size() == 3);
    CHECK(u1.l.size() == 2);

    const ModelSpec restricted = build_restricted_model(inst, incumbent, u1);
    int zbl = 0;
    for (const auto& v : restricted.variables)
      if (v.kind == VarKind::Z || v.kind == VarKind::B || v.kind == VarKind::L) ++zbl;
    CHECK(zbl - static_cast<int>(restricted.fixings.size()) == 16 + 3 + 2);
  }

  SECTION("free set with an unknown index is refused") {
    VariableSet bad;
    bad.z.insert({0, 1, 9, 0});
    CHECK_THROWS_AS(build_restricted_model(inst, incumbent, bad), std::out_of_range);
  }
}
