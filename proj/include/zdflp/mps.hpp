#ifndef ZDFLP_MPS_HPP
#define ZDFLP_MPS_HPP

#include <map>
#include <string>
#include <vector>

#include "zdflp/model.hpp"

namespace zdflp {

namespace detail {

// One MPS data line with fields at the classic fixed-format columns
// (2-3, 5-12, 15-22, 25-36, 40-47, 50-61). Long numerics overflow their field
// but stay whitespace-separated, which every free-format reader accepts.
inline void mps_line(std::string& out, const std::string& f1, const std::string& f2,
                     const std::string& f3 = "", const std::string& f4 = "",
                     const std::string& f5 = "", const std::string& f6 = "") {
  static constexpr int starts[6] = {1, 4, 14, 24, 39, 49};
  std::string line;
  const std::string* fields[6] = {&f1, &f2, &f3, &f4, &f5, &f6};
  for (int n = 0; n < 6; ++n) {
    if (fields[n]->empty()) continue;
    if (static_cast<int>(line.size()) >= starts[n]) line += ' ';
    while (static_cast<int>(line.size()) < starts[n]) line += ' ';
    line += *fields[n];
  }
  out += line;
  out += '\n';
}

}  // namespace detail

// Serializes a ModelSpec as a fixed-format MPS document. Variables become
// columns x0..xN in model order, rows r0..rM; fixings are emitted as FX
// bounds. Output is byte-for-byte deterministic for identical models.
inline std::string write_mps(const ModelSpec& m, const std::string& name = "ZDFLP") {
  std::map<int, double> fixed(m.fixings.begin(), m.fixings.end());

  // Column-major view of the rows.
  std::vector<std::vector<std::pair<int, double>>> columns(m.variables.size());
  for (std::size_t row = 0; row < m.constraints.size(); ++row)
    for (const Term& term : m.constraints[row].terms)
      columns[static_cast<std::size_t>(term.var)].push_back(
          {static_cast<int>(row), term.coef});
  std::vector<double> obj(m.variables.size(), 0.0);
  for (const Term& term : m.objective) obj[static_cast<std::size_t>(term.var)] = term.coef;

  std::string out;
  out += "NAME          " + name + "\n";
  out += "ROWS\n";
  detail::mps_line(out, "N", "OBJ");
  for (std::size_t row = 0; row < m.constraints.size(); ++row) {
    const char* sense = m.constraints[row].sense == Sense::LE   ? "L"
                        : m.constraints[row].sense == Sense::GE ? "G"
                                                                : "E";
    detail::mps_line(out, sense, "r" + std::to_string(row));
  }

  out += "COLUMNS\n";
  bool in_integer = false;
  int marker = 0;
  for (std::size_t v = 0; v < m.variables.size(); ++v) {
    if (m.variables[v].integral != in_integer) {
      detail::mps_line(out, "", "M" + std::to_string(marker++), "'MARKER'",
                       in_integer ? "'INTEND'" : "'INTORG'");
      in_integer = m.variables[v].integral;
    }
    const std::string col = "x" + std::to_string(v);
    // Every column carries an objective entry so unreferenced variables still
    // exist for the solver and appear in its solution file.
    detail::mps_line(out, "", col, "OBJ", format_double(obj[v]));
    for (const auto& [row, coef] : columns[v])
      detail::mps_line(out, "", col, "r" + std::to_string(row), format_double(coef));
  }
  if (in_integer) detail::mps_line(out, "", "M" + std::to_string(marker++), "'MARKER'", "'INTEND'");

  out += "RHS\n";
  for (std::size_t row = 0; row < m.constraints.size(); ++row)
    if (m.constraints[row].rhs != 0.0)
      detail::mps_line(out, "", "RHS", "r" + std::to_string(row),
                       format_double(m.constraints[row].rhs));

  out += "BOUNDS\n";
  for (std::size_t v = 0; v < m.variables.size(); ++v) {
    const std::string col = "x" + std::to_string(v);
    auto fx = fixed.find(static_cast<int>(v));
    if (fx != fixed.end()) {
      detail::mps_line(out, "FX", "BND", col, format_double(fx->second));
    } else {
      detail::mps_line(out, "LO", "BND", col, format_double(m.variables[v].lo));
      detail::mps_line(out, "UP", "BND", col, format_double(m.variables[v].hi));
    }
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace zdflp

#endif  // ZDFLP_MPS_HPP
