#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include "helpers.hpp"
#include "zdflp/model.hpp"
#include "zdflp/mps.hpp"

using namespace zdflp;
using zdflp_test::make_uniform_instance;

namespace {

// Independent reference reader for the MPS subset the writer emits. Parses by
// whitespace tokens only, sharing no code with the writer.
struct ParsedMps {
  std::map<std::string, char> rows;  // name -> N/L/G/E
  std::map<std::string, std::map<std::string, double>> columns;  // col -> row -> coef
  std::map<std::string, bool> integral;
  std::map<std::string, double> rhs;
  std::map<std::string, std::pair<double, double>> bounds;
  std::map<std::string, double> fixed;
};

ParsedMps parse_mps(const std::string& text) {
  ParsedMps mps;
  std::istringstream in(text);
  std::string line, section;
  bool integer_mode = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != ' ') {
      std::istringstream ls(line);
      ls >> section;
      continue;
    }
    std::istringstream ls(line);
    if (section == "ROWS") {
      std::string sense, name;
      ls >> sense >> name;
      mps.rows[name] = sense[0];
    } else if (section == "COLUMNS") {
      std::string a, b, c;
      ls >> a >> b >> c;
      if (b == "'MARKER'") {
        integer_mode = (c == "'INTORG'");
        continue;
      }
      mps.columns[a][b] = std::stod(c);
      mps.integral[a] = integer_mode;
      std::string d, e;
      if (ls >> d >> e) mps.columns[a][d] = std::stod(e);
    } else if (section == "RHS") {
      std::string set, row, value;
      ls >> set >> row >> value;
      mps.rhs[row] = std::stod(value);
    } else if (section == "BOUNDS") {
      std::string kind, set, col, value;
      ls >> kind >> set >> col;
      if (ls >> value) {
        if (kind == "FX")
          mps.fixed[col] = std::stod(value);
        else if (kind == "LO")
          mps.bounds[col].first = std::stod(value);
        else if (kind == "UP")
          mps.bounds[col].second = std::stod(value);
      }
    }
  }
  return mps;
}

}  // namespace

TEST_CASE("single bounded variable round-trips through the reference reader") {
  ModelSpec m;
  m.variables.push_back({VarKind::C, {0, 0, 0, -1}, false, 3.0, 10.0});
  m.lookup[{static_cast<int>(VarKind::C), 0, 0, 0, -1}] = 0;
  m.objective.push_back({0, 1.0});
  const std::string text = write_mps(m);

  const ParsedMps mps = parse_mps(text);
  REQUIRE(mps.rows.size() == 1);  // objective only
  CHECK(mps.rows.at("OBJ") == 'N');
  REQUIRE(mps.columns.count("x0"));
  CHECK(mps.columns.at("x0").at("OBJ") == Catch::Approx(1.0));
  CHECK(mps.bounds.at("x0").first == Catch::Approx(3.0));
  CHECK(mps.bounds.at("x0").second == Catch::Approx(10.0));
  CHECK_FALSE(mps.integral.at("x0"));
  CHECK(text.find("ENDATA") != std::string::npos);
}

TEST_CASE("equality rows carry sense E") {
  ModelSpec m;
  m.variables.push_back({VarKind::B, {0, 0, 0, -1}, true, 0.0, 1.0});
  m.lookup[{static_cast<int>(VarKind::B), 0, 0, 0, -1}] = 0;
  m.constraints.push_back({{{0, 1.0}}, Sense::EQ, 1.0, "eq17"});
  const ParsedMps mps = parse_mps(write_mps(m));
  CHECK(mps.rows.at("r0") == 'E');
  CHECK(mps.rhs.at("r0") == Catch::Approx(1.0));
  CHECK(mps.integral.at("x0"));
}

TEST_CASE("full model survives an independent parse with identical semantics") {
  Instance inst = make_uniform_instance(2, 2, 1);
  inst.costs.fixed_rearrange[{"d1", 1}] = 2.0;
  inst.zones.pinned_orientation.push_back({0, Axis::X});
  const ModelSpec m = build_full_model(inst);
  const ParsedMps mps = parse_mps(write_mps(m));

  // every variable appears as a column with its bounds or fixing
  REQUIRE(mps.columns.size() == m.variables.size());
  std::map<int, double> fixed(m.fixings.begin(), m.fixings.end());
  for (std::size_t v = 0; v < m.variables.size(); ++v) {
    const std::string col = "x" + std::to_string(v);
    REQUIRE(mps.columns.count(col));
    CHECK(mps.integral.at(col) == m.variables[v].integral);
    auto fx = fixed.find(static_cast<int>(v));
    if (fx != fixed.end()) {
      CHECK(mps.fixed.at(col) == Catch::Approx(fx->second));
    } else {
      CHECK(mps.bounds.at(col).first == Catch::Approx(m.variables[v].lo));
      CHECK(mps.bounds.at(col).second == Catch::Approx(m.variables[v].hi));
    }
  }

  // every row matches sense, rhs and coefficients
  REQUIRE(mps.rows.size() == m.constraints.size() + 1);
  for (std::size_t row = 0; row < m.constraints.size(); ++row) {
    const ConstraintRow& c = m.constraints[row];
    const std::string name = "r" + std::to_string(row);
    const char sense = c.sense == Sense::LE ? 'L' : c.sense == Sense::GE ? 'G' : 'E';
    CHECK(mps.rows.at(name) == sense);
    const double rhs = mps.rhs.count(name) ? mps.rhs.at(name) : 0.0;
    CHECK(rhs == Catch::Approx(c.rhs).margin(1e-12));
    for (const Term& term : c.terms) {
      const std::string col = "x" + std::to_string(term.var);
      CHECK(mps.columns.at(col).at(name) == Catch::Approx(term.coef));
    }
  }

  // objective coefficients
  std::map<int, double> obj;
  for (const Term& term : m.objective) obj[term.var] = term.coef;
  for (std::size_t v = 0; v < m.variables.size(); ++v) {
    const double want = obj.count(static_cast<int>(v)) ? obj.at(static_cast<int>(v)) : 0.0;
    CHECK(mps.columns.at("x" + std::to_string(v)).at("OBJ") ==
          Catch::Approx(want).margin(1e-12));
  }
}

TEST_CASE("identical models produce byte-identical MPS") {
  const Instance inst = make_uniform_instance(3, 2, 2);
  CHECK(write_mps(build_full_model(inst)) == write_mps(build_full_model(inst)));
}

TEST_CASE("fixings are emitted as FX bounds") {
  Instance inst = make_uniform_instance(2, 1, 1);
  inst.zones.pinned_orientation.push_back({0, Axis::Y});
  const ModelSpec m = build_full_model(inst);
  const ParsedMps mps = parse_mps(write_mps(m));
  const int beta = m.require_var(VarKind::Beta, {0, -1, -1, -1});
  CHECK(mps.fixed.at("x" + std::to_string(beta)) == Catch::Approx(1.0));
}
