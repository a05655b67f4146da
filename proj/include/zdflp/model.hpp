#ifndef ZDFLP_MODEL_HPP
#define ZDFLP_MODEL_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "zdflp/common.hpp"
#include "zdflp/instance.hpp"
#include "zdflp/solution.hpp"

namespace zdflp {

// One decision-variable family per symbol of the formulation. Enum order is
// the canonical variable ordering in a ModelSpec.
enum class VarKind : int {
  Beta,   // beta_k        zone orientation (0 = x-aligned, 1 = y-aligned)
  Gamma,  // gamma_kht^r   zone k precedes zone h on axis r in period t
  Z,      // z_ijt^r       department i precedes j on axis r in period t
  B,      // b_ikt         department-to-zone assignment
  L,      // l_it^r        half side length
  C,      // c_it^r        center coordinate
  U,      // u_it^r        center displacement between t-1 and t
  G,      // g_it^r        I/O point coordinate
  D,      // d_ijt^r       I/O distance per axis (flow pairs only)
  V,      // v_it          department rearranged between t-1 and t
  Q,      // q_kt^s        zone bound coordinate, s in {e,w,s,n}
  O,      // o_kt^s        zone bound moved between t-1 and t
};

inline const char* var_kind_name(VarKind k) {
  switch (k) {
    case VarKind::Beta: return "beta";
    case VarKind::Gamma: return "gamma";
    case VarKind::Z: return "z";
    case VarKind::B: return "b";
    case VarKind::L: return "l";
    case VarKind::C: return "c";
    case VarKind::U: return "u";
    case VarKind::G: return "g";
    case VarKind::D: return "d";
    case VarKind::V: return "v";
    case VarKind::Q: return "q";
    default: return "o";
  }
}

// A decision variable: identity (kind + index tuple), integrality and bounds.
// Index slots are used per kind as documented above; unused slots are -1.
struct VarRef {
  VarKind kind = VarKind::Beta;
  std::array<int, 4> idx{-1, -1, -1, -1};
  bool integral = false;
  double lo = 0.0;
  double hi = 0.0;

  std::tuple<int, int, int, int, int> key() const {
    return {static_cast<int>(kind), idx[0], idx[1], idx[2], idx[3]};
  }
  bool operator<(const VarRef& other) const { return key() < other.key(); }
  bool operator==(const VarRef& other) const { return key() == other.key(); }

  std::string name() const {
    std::string s = var_kind_name(kind);
    for (int v : idx) {
      if (v < 0) break;
      s += "_" + std::to_string(v);
    }
    return s;
  }
};

struct Term {
  int var = -1;  // position in ModelSpec::variables
  double coef = 0.0;
};

enum class Sense { LE, GE, EQ };

struct ConstraintRow {
  std::vector<Term> terms;
  Sense sense = Sense::LE;
  double rhs = 0.0;
  std::string tag;  // source equation label, e.g. "eq16" or "eq24:pos"
};

// Solver-agnostic MILP. Variables are sorted by (kind, indices) so identical
// instances produce identical models and identical MPS bytes.
struct ModelSpec {
  std::vector<VarRef> variables;
  std::vector<Term> objective;  // minimized
  std::vector<ConstraintRow> constraints;
  std::vector<std::pair<int, double>> fixings;  // variable position -> value

  std::map<std::tuple<int, int, int, int, int>, int> lookup;

  int var_index(VarKind kind, std::array<int, 4> idx) const {
    auto it = lookup.find({static_cast<int>(kind), idx[0], idx[1], idx[2], idx[3]});
    return it == lookup.end() ? -1 : it->second;
  }
  int require_var(VarKind kind, std::array<int, 4> idx) const {
    const int v = var_index(kind, idx);
    if (v < 0)
      throw std::logic_error("model has no variable " +
                             VarRef{kind, idx, false, 0, 0}.name());
    return v;
  }
};

// Tangential support points x̄_ipt of the area outer approximation: delta
// points evenly spaced over the feasible half-width range [min_x/2, max_x/2].
struct SupportPoints {
  std::map<std::pair<int, int>, std::vector<double>> points;  // (dept, t) -> x̄
};

inline SupportPoints make_support_points(const Instance& inst) {
  if (inst.delta < 2)
    throw std::invalid_argument("delta must be at least 2 support points");
  SupportPoints sp;
  for (std::size_t i = 0; i < inst.departments.size(); ++i) {
    for (const auto& [t, req] : inst.departments[i].periods) {
      const double lo = req.min_side[static_cast<int>(Axis::X)] / 2.0;
      const double hi = req.max_side[static_cast<int>(Axis::X)] / 2.0;
      std::vector<double> pts(static_cast<std::size_t>(inst.delta));
      const double step = (hi - lo) / static_cast<double>(inst.delta - 1);
      for (int p = 0; p < inst.delta; ++p)
        pts[static_cast<std::size_t>(p)] = lo + step * static_cast<double>(p);
      sp.points[{static_cast<int>(i), t}] = std::move(pts);
    }
  }
  return sp;
}

// Big-M constants: geometric differences cannot exceed the facility side on
// the constraint's axis, so L^x / L^y are the tightest trivially valid values.
inline double big_m(const Instance& inst, Axis axis) { return inst.facility.side(axis); }
inline double big_m(const Instance& inst, Side side) {
  return inst.facility.side(side_axis(side));
}

namespace detail {

class ModelBuilder {
 public:
  explicit ModelBuilder(const Instance& inst) : inst_(inst) {}

  ModelSpec build() {
    create_variables();
    add_zone_rows();        // eq4-eq12
    add_ordering_rows();    // eq13-eq16
    add_assignment_rows();  // eq17-eq18
    add_containment_rows(); // eq19-eq22
    add_boundary_rows();    // eq24
    add_distance_rows();    // eq26
    add_io_rows();          // eq27, eq28a, eq28b
    add_relayout_rows();    // eq29-eq31
    add_area_rows();        // eq32
    add_objective();        // eq1-eq3
    apply_pins();
    return std::move(model_);
  }

 private:
  int ax(Axis r) const { return static_cast<int>(r); }

  void add_var(VarKind kind, std::array<int, 4> idx, bool integral, double lo, double hi) {
    model_.lookup[{static_cast<int>(kind), idx[0], idx[1], idx[2], idx[3]}] =
        static_cast<int>(model_.variables.size());
    model_.variables.push_back({kind, idx, integral, lo, hi});
  }

  // Creation follows VarKind order with ascending index loops, which makes the
  // variable list lexicographically sorted by construction.
  void create_variables() {
    const int K = inst_.zones.count;
    const int T = inst_.periods;
    const int n = static_cast<int>(inst_.departments.size());

    for (int k = 0; k < K; ++k) add_var(VarKind::Beta, {k, -1, -1, -1}, true, 0, 1);

    for (int k = 0; k < K; ++k)
      for (int h = 0; h < K; ++h) {
        if (h == k) continue;
        for (int t = 0; t < T; ++t)
          for (Axis r : kAxes)
            add_var(VarKind::Gamma, {k, h, t, ax(r)}, true, 0, 1);
      }

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int t = 0; t < T; ++t) {
          if (!inst_.department_active(i, t) || !inst_.department_active(j, t)) continue;
          for (Axis r : kAxes) add_var(VarKind::Z, {i, j, t, ax(r)}, true, 0, 1);
        }
      }

    for (int i = 0; i < n; ++i)
      for (int k = 0; k < K; ++k)
        for (int t = 0; t < T; ++t)
          if (inst_.department_active(i, t)) add_var(VarKind::B, {i, k, t, -1}, true, 0, 1);

    for (int i = 0; i < n; ++i)
      for (const auto& [t, req] : inst_.departments[static_cast<std::size_t>(i)].periods)
        for (Axis r : kAxes)
          add_var(VarKind::L, {i, t, ax(r), -1}, false, req.min_side[ax(r)] / 2.0,
                  req.max_side[ax(r)] / 2.0);

    for (int i = 0; i < n; ++i)
      for (int t = 0; t < T; ++t) {
        if (!inst_.department_active(i, t)) continue;
        for (Axis r : kAxes)
          add_var(VarKind::C, {i, t, ax(r), -1}, false, 0.0, inst_.facility.side(r));
      }

    for (int i = 0; i < n; ++i)
      for (int t = 1; t < T; ++t) {
        if (!inst_.department_active(i, t) || !inst_.department_active(i, t - 1)) continue;
        for (Axis r : kAxes)
          add_var(VarKind::U, {i, t, ax(r), -1}, false, 0.0, inst_.facility.side(r));
      }

    for (int i = 0; i < n; ++i)
      for (int t = 0; t < T; ++t) {
        if (!inst_.department_active(i, t)) continue;
        for (Axis r : kAxes)
          add_var(VarKind::G, {i, t, ax(r), -1}, false, 0.0, inst_.facility.side(r));
      }

    for (int t = 0; t < T; ++t) pairs_[t] = flow_pairs(inst_, t);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int t = 0; t < T; ++t)
          for (const auto& p : pairs_[t])
            if (p.i == i && p.j == j)
              for (Axis r : kAxes)
                add_var(VarKind::D, {i, j, t, ax(r)}, false, 0.0, inst_.facility.side(r));

    for (int i = 0; i < n; ++i)
      for (int t = 1; t < T; ++t)
        if (inst_.department_active(i, t) && inst_.department_active(i, t - 1))
          add_var(VarKind::V, {i, t, -1, -1}, true, 0, 1);

    for (int k = 0; k < K; ++k)
      for (int t = 0; t < T; ++t)
        for (Side s : kSides)
          add_var(VarKind::Q, {k, t, static_cast<int>(s), -1}, false, 0.0,
                  inst_.facility.side(side_axis(s)));

    for (int k = 0; k < K; ++k)
      for (int t = 1; t < T; ++t)
        for (Side s : kSides)
          add_var(VarKind::O, {k, t, static_cast<int>(s), -1}, true, 0, 1);
  }

  void add_row(std::vector<Term> terms, Sense sense, double rhs, std::string tag) {
    model_.constraints.push_back({std::move(terms), sense, rhs, std::move(tag)});
  }

  int q_var(int k, int t, Side s) const {
    return model_.var_index(VarKind::Q, {k, t, static_cast<int>(s), -1});
  }

  // Zone precedence and containment, eq4-eq12.
  void add_zone_rows() {
    const int K = inst_.zones.count;
    const double Lx = inst_.facility.len_x;
    const double Ly = inst_.facility.len_y;

    for (int t = 0; t < inst_.periods; ++t)
      for (int k = 0; k < K; ++k)
        for (int h = k + 1; h < K; ++h)
          add_row({{model_.require_var(VarKind::Gamma, {k, h, t, 0}), 1.0},
                   {model_.require_var(VarKind::Gamma, {h, k, t, 0}), 1.0},
                   {model_.require_var(VarKind::Gamma, {k, h, t, 1}), 1.0},
                   {model_.require_var(VarKind::Gamma, {h, k, t, 1}), 1.0}},
                  Sense::EQ, 1.0, "eq4");

    for (int t = 0; t < inst_.periods; ++t)
      for (int k = 0; k < K; ++k) {
        add_row({{q_var(k, t, Side::West), 1.0}, {q_var(k, t, Side::East), -1.0}},
                Sense::LE, 0.0, "eq5");
        add_row({{q_var(k, t, Side::South), 1.0}, {q_var(k, t, Side::North), -1.0}},
                Sense::LE, 0.0, "eq7");
      }

    for (int t = 0; t < inst_.periods; ++t)
      for (int k = 0; k < K; ++k)
        for (int h = 0; h < K; ++h) {
          if (h == k) continue;
          add_row({{q_var(k, t, Side::East), 1.0},
                   {q_var(h, t, Side::West), -1.0},
                   {model_.require_var(VarKind::Gamma, {k, h, t, 0}), Lx}},
                  Sense::LE, Lx, "eq6");
          add_row({{q_var(k, t, Side::North), 1.0},
                   {q_var(h, t, Side::South), -1.0},
                   {model_.require_var(VarKind::Gamma, {k, h, t, 1}), Ly}},
                  Sense::LE, Ly, "eq8");
        }

    for (int t = 0; t < inst_.periods; ++t)
      for (int k = 0; k < K; ++k) {
        add_row({{q_var(k, t, Side::East), 1.0}}, Sense::LE, Lx, "eq9");
        add_row({{q_var(k, t, Side::North), 1.0}}, Sense::LE, Ly, "eq10");
        add_row({{q_var(k, t, Side::West), 1.0}}, Sense::GE, 0.0, "eq11");
        add_row({{q_var(k, t, Side::South), 1.0}}, Sense::GE, 0.0, "eq12");
      }
  }

  // Intra-zone ordering activation and separation, eq13-eq16.
  void add_ordering_rows() {
    for (int t = 0; t < inst_.periods; ++t) {
      const auto active = inst_.active_departments(t);
      for (int k = 0; k < inst_.zones.count; ++k)
        for (std::size_t a = 0; a < active.size(); ++a)
          for (std::size_t b = a + 1; b < active.size(); ++b) {
            const int i = active[a], j = active[b];
            add_row({{model_.require_var(VarKind::Z, {i, j, t, 0}), 1.0},
                     {model_.require_var(VarKind::Z, {j, i, t, 0}), 1.0},
                     {model_.require_var(VarKind::B, {i, k, t, -1}), -1.0},
                     {model_.require_var(VarKind::B, {j, k, t, -1}), -1.0},
                     {model_.require_var(VarKind::Beta, {k, -1, -1, -1}), 1.0}},
                    Sense::GE, -1.0, "eq13");
            add_row({{model_.require_var(VarKind::Z, {i, j, t, 1}), 1.0},
                     {model_.require_var(VarKind::Z, {j, i, t, 1}), 1.0},
                     {model_.require_var(VarKind::B, {i, k, t, -1}), -1.0},
                     {model_.require_var(VarKind::B, {j, k, t, -1}), -1.0},
                     {model_.require_var(VarKind::Beta, {k, -1, -1, -1}), -1.0}},
                    Sense::GE, -2.0, "eq14");
          }
      for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t b = a + 1; b < active.size(); ++b)
          for (Axis r : kAxes) {
            const int i = active[a], j = active[b];
            add_row({{model_.require_var(VarKind::Z, {i, j, t, ax(r)}), 1.0},
                     {model_.require_var(VarKind::Z, {j, i, t, ax(r)}), 1.0}},
                    Sense::LE, 1.0, "eq15");
          }
      for (int i : active)
        for (int j : active) {
          if (i == j) continue;
          for (Axis r : kAxes) {
            const double M = big_m(inst_, r);
            add_row({{model_.require_var(VarKind::C, {i, t, ax(r), -1}), 1.0},
                     {model_.require_var(VarKind::L, {i, t, ax(r), -1}), 1.0},
                     {model_.require_var(VarKind::C, {j, t, ax(r), -1}), -1.0},
                     {model_.require_var(VarKind::L, {j, t, ax(r), -1}), 1.0},
                     {model_.require_var(VarKind::Z, {i, j, t, ax(r)}), M}},
                    Sense::LE, M, "eq16");
          }
        }
    }
  }

  // Every department in exactly one zone; no zone empty, eq17-eq18.
  void add_assignment_rows() {
    for (int t = 0; t < inst_.periods; ++t) {
      const auto active = inst_.active_departments(t);
      for (int i : active) {
        std::vector<Term> terms;
        for (int k = 0; k < inst_.zones.count; ++k)
          terms.push_back({model_.require_var(VarKind::B, {i, k, t, -1}), 1.0});
        add_row(std::move(terms), Sense::EQ, 1.0, "eq17");
      }
      for (int k = 0; k < inst_.zones.count; ++k) {
        std::vector<Term> terms;
        for (int i : active) terms.push_back({model_.require_var(VarKind::B, {i, k, t, -1}), 1.0});
        add_row(std::move(terms), Sense::GE, 1.0, "eq18");
      }
    }
  }

  // Departments inside their assigned zone, eq19-eq22.
  void add_containment_rows() {
    const double Lx = inst_.facility.len_x;
    const double Ly = inst_.facility.len_y;
    for (int t = 0; t < inst_.periods; ++t)
      for (int k = 0; k < inst_.zones.count; ++k)
        for (int i : inst_.active_departments(t)) {
          const int b = model_.require_var(VarKind::B, {i, k, t, -1});
          add_row({{model_.require_var(VarKind::C, {i, t, 0, -1}), 1.0},
                   {model_.require_var(VarKind::L, {i, t, 0, -1}), 1.0},
                   {q_var(k, t, Side::East), -1.0},
                   {b, Lx}},
                  Sense::LE, Lx, "eq19");
          add_row({{model_.require_var(VarKind::C, {i, t, 0, -1}), 1.0},
                   {model_.require_var(VarKind::L, {i, t, 0, -1}), -1.0},
                   {q_var(k, t, Side::West), -1.0},
                   {b, -Lx}},
                  Sense::GE, -Lx, "eq20");
          add_row({{model_.require_var(VarKind::C, {i, t, 1, -1}), 1.0},
                   {model_.require_var(VarKind::L, {i, t, 1, -1}), 1.0},
                   {q_var(k, t, Side::North), -1.0},
                   {b, Ly}},
                  Sense::LE, Ly, "eq21");
          add_row({{model_.require_var(VarKind::C, {i, t, 1, -1}), 1.0},
                   {model_.require_var(VarKind::L, {i, t, 1, -1}), -1.0},
                   {q_var(k, t, Side::South), -1.0},
                   {b, -Ly}},
                  Sense::GE, -Ly, "eq22");
        }
  }

  // Zone-bound movement indicators, eq24 split into both absolute-value halves.
  void add_boundary_rows() {
    for (int k = 0; k < inst_.zones.count; ++k)
      for (int t = 1; t < inst_.periods; ++t)
        for (Side s : kSides) {
          const double M = big_m(inst_, s);
          const int o = model_.require_var(VarKind::O, {k, t, static_cast<int>(s), -1});
          add_row({{o, M}, {q_var(k, t, s), -1.0}, {q_var(k, t - 1, s), 1.0}},
                  Sense::GE, 0.0, "eq24:pos");
          add_row({{o, M}, {q_var(k, t, s), 1.0}, {q_var(k, t - 1, s), -1.0}},
                  Sense::GE, 0.0, "eq24:neg");
        }
  }

  // Rectilinear I/O distances for the pairs in P_t, eq26 split per axis.
  void add_distance_rows() {
    for (int t = 0; t < inst_.periods; ++t)
      for (const auto& p : pairs_[t])
        for (Axis r : kAxes) {
          const int d = model_.require_var(VarKind::D, {p.i, p.j, t, ax(r)});
          const int gi = model_.require_var(VarKind::G, {p.i, t, ax(r), -1});
          const int gj = model_.require_var(VarKind::G, {p.j, t, ax(r), -1});
          add_row({{d, 1.0}, {gi, -1.0}, {gj, 1.0}}, Sense::GE, 0.0, "eq26:pos");
          add_row({{d, 1.0}, {gi, 1.0}, {gj, -1.0}}, Sense::GE, 0.0, "eq26:neg");
        }
  }

  // I/O containment (eq27) and orientation-conditional centering (eq28a/eq28b).
  void add_io_rows() {
    const double Lx = inst_.facility.len_x;
    const double Ly = inst_.facility.len_y;
    for (int t = 0; t < inst_.periods; ++t) {
      for (int i : inst_.active_departments(t))
        for (Axis r : kAxes) {
          const int g = model_.require_var(VarKind::G, {i, t, ax(r), -1});
          const int c = model_.require_var(VarKind::C, {i, t, ax(r), -1});
          const int l = model_.require_var(VarKind::L, {i, t, ax(r), -1});
          add_row({{g, 1.0}, {c, -1.0}, {l, 1.0}}, Sense::GE, 0.0, "eq27:lo");
          add_row({{g, 1.0}, {c, -1.0}, {l, -1.0}}, Sense::LE, 0.0, "eq27:hi");
        }
      for (int k = 0; k < inst_.zones.count; ++k)
        for (int i : inst_.active_departments(t)) {
          const int beta = model_.require_var(VarKind::Beta, {k, -1, -1, -1});
          const int b = model_.require_var(VarKind::B, {i, k, t, -1});
          const int gx = model_.require_var(VarKind::G, {i, t, 0, -1});
          const int cx = model_.require_var(VarKind::C, {i, t, 0, -1});
          // |g^x - c^x| <= L^x (1 - b_ikt + beta_k)
          add_row({{gx, 1.0}, {cx, -1.0}, {b, -Lx}, {beta, Lx}}, Sense::GE, -Lx, "eq28a:lo");
          add_row({{gx, 1.0}, {cx, -1.0}, {b, Lx}, {beta, -Lx}}, Sense::LE, Lx, "eq28a:hi");
          const int gy = model_.require_var(VarKind::G, {i, t, 1, -1});
          const int cy = model_.require_var(VarKind::C, {i, t, 1, -1});
          // |g^y - c^y| <= L^y (2 - b_ikt - beta_k)
          add_row({{gy, 1.0}, {cy, -1.0}, {b, -Ly}, {beta, -Ly}}, Sense::GE, -2.0 * Ly,
                  "eq28b:lo");
          add_row({{gy, 1.0}, {cy, -1.0}, {b, Ly}, {beta, Ly}}, Sense::LE, 2.0 * Ly,
                  "eq28b:hi");
        }
    }
  }

  // Department relayout detection, eq29-eq31. Only departments active in both
  // t-1 and t participate; a department's first active period has no history.
  void add_relayout_rows() {
    for (int t = 1; t < inst_.periods; ++t)
      for (int i : inst_.active_departments(t)) {
        if (!inst_.department_active(i, t - 1)) continue;
        const int v = model_.require_var(VarKind::V, {i, t, -1, -1});
        for (Axis r : kAxes) {
          const double M = big_m(inst_, r);
          const int ct = model_.require_var(VarKind::C, {i, t, ax(r), -1});
          const int cp = model_.require_var(VarKind::C, {i, t - 1, ax(r), -1});
          add_row({{v, M}, {ct, -1.0}, {cp, 1.0}}, Sense::GE, 0.0, "eq29:pos");
          add_row({{v, M}, {ct, 1.0}, {cp, -1.0}}, Sense::GE, 0.0, "eq29:neg");
          const int lt = model_.require_var(VarKind::L, {i, t, ax(r), -1});
          const int lp = model_.require_var(VarKind::L, {i, t - 1, ax(r), -1});
          add_row({{v, M}, {lt, -1.0}, {lp, 1.0}}, Sense::GE, 0.0, "eq30:pos");
          add_row({{v, M}, {lt, 1.0}, {lp, -1.0}}, Sense::GE, 0.0, "eq30:neg");
          const int u = model_.require_var(VarKind::U, {i, t, ax(r), -1});
          add_row({{u, 1.0}, {ct, -1.0}, {cp, 1.0}}, Sense::GE, 0.0, "eq31:pos");
          add_row({{u, 1.0}, {ct, 1.0}, {cp, -1.0}}, Sense::GE, 0.0, "eq31:neg");
        }
      }
  }

  // Polyhedral outer approximation of the area requirement, eq32: one tangent
  // of (2 l^x)(2 l^y) >= a at each support half-width.
  void add_area_rows() {
    const SupportPoints sp = make_support_points(inst_);
    for (std::size_t i = 0; i < inst_.departments.size(); ++i)
      for (const auto& [t, req] : inst_.departments[i].periods) {
        const int lx = model_.require_var(VarKind::L, {static_cast<int>(i), t, 0, -1});
        const int ly = model_.require_var(VarKind::L, {static_cast<int>(i), t, 1, -1});
        for (double x : sp.points.at({static_cast<int>(i), t}))
          add_row({{lx, req.area}, {ly, 4.0 * x * x}}, Sense::GE, 2.0 * req.area * x,
                  "eq32");
      }
  }

  // Objective eq1-eq3: material handling + fixed/variable relayout + zone
  // boundary changes.
  void add_objective() {
    std::map<int, double> coef;
    for (int t = 0; t < inst_.periods; ++t)
      for (const auto& p : pairs_[t])
        for (Axis r : kAxes)
          coef[model_.require_var(VarKind::D, {p.i, p.j, t, ax(r)})] += p.weight;
    for (int t = 1; t < inst_.periods; ++t)
      for (int i : inst_.active_departments(t)) {
        if (!inst_.department_active(i, t - 1)) continue;
        const std::string& id = inst_.departments[static_cast<std::size_t>(i)].id;
        const double r_cost = inst_.costs.fixed(id, t);
        const double q_cost = inst_.costs.unit(id, t);
        coef[model_.require_var(VarKind::V, {i, t, -1, -1})] += r_cost;
        for (Axis r : kAxes)
          coef[model_.require_var(VarKind::U, {i, t, ax(r), -1})] += q_cost;
      }
    for (int k = 0; k < inst_.zones.count; ++k)
      for (int t = 1; t < inst_.periods; ++t)
        for (Side s : kSides)
          coef[model_.require_var(VarKind::O, {k, t, static_cast<int>(s), -1})] +=
              inst_.costs.boundary(k, t);
    for (const auto& [var, c] : coef)
      if (c != 0.0) model_.objective.push_back({var, c});
  }

  // Designer pins become FX fixings.
  void apply_pins() {
    std::map<int, double> fixed;
    for (const auto& pin : inst_.zones.pinned_orientation)
      fixed[model_.require_var(VarKind::Beta, {pin.zone, -1, -1, -1})] =
          pin.orientation == Axis::X ? 0.0 : 1.0;
    for (const auto& pin : inst_.zones.pinned_precedence)
      fixed[model_.require_var(VarKind::Gamma,
                               {pin.before, pin.after, pin.period, ax(pin.axis)})] = 1.0;
    for (const auto& pin : inst_.zones.pinned_assignment) {
      const int i = inst_.department_index(pin.department);
      fixed[model_.require_var(VarKind::B, {i, pin.zone, pin.period, -1})] = 1.0;
    }
    for (const auto& [var, value] : fixed) model_.fixings.push_back({var, value});
  }

  const Instance& inst_;
  ModelSpec model_;
  std::map<int, std::vector<FlowPair>> pairs_;
};

}  // namespace detail

// Materializes the full MILP over the instance's index sets. Refuses invalid
// instances.
inline ModelSpec build_full_model(const Instance& inst) {
  auto issues = validate(inst);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return detail::ModelBuilder(inst).build();
}

// The variable subset U unfixed in a restricted subproblem: index tuples of z,
// b and l entries, matching the neighborhood definitions.
struct VariableSet {
  std::set<std::array<int, 4>> z;  // (i, j, t, axis)
  std::set<std::array<int, 3>> b;  // (i, k, t)
  std::set<std::array<int, 3>> l;  // (i, t, axis)

  std::size_t size() const { return z.size() + b.size() + l.size(); }
};

// Restricted model: every z/b/l variable outside `free` is fixed to its value
// in the incumbent. All other families (beta, gamma, c, g, d, u, v, q, o) stay
// free. Designer pins persist regardless of `free`.
inline ModelSpec build_restricted_model(const Instance& inst, const LayoutSolution& incumbent,
                                        const VariableSet& free) {
  ModelSpec model = build_full_model(inst);
  for (const auto& entry : free.z)
    if (model.var_index(VarKind::Z, entry) < 0)
      throw std::out_of_range("free set references unknown z variable");
  for (const auto& entry : free.b)
    if (model.var_index(VarKind::B, {entry[0], entry[1], entry[2], -1}) < 0)
      throw std::out_of_range("free set references unknown b variable");
  for (const auto& entry : free.l)
    if (model.var_index(VarKind::L, {entry[0], entry[1], entry[2], -1}) < 0)
      throw std::out_of_range("free set references unknown l variable");

  std::set<int> already;
  for (const auto& [var, value] : model.fixings) already.insert(var);

  std::vector<std::pair<int, double>> fixings = std::move(model.fixings);
  for (std::size_t v = 0; v < model.variables.size(); ++v) {
    const VarRef& ref = model.variables[v];
    const int var = static_cast<int>(v);
    if (already.count(var)) continue;
    if (ref.kind == VarKind::Z) {
      if (free.z.count(ref.idx)) continue;
      const auto& period = incumbent.periods.at(static_cast<std::size_t>(ref.idx[2]));
      const std::string& from = inst.departments[static_cast<std::size_t>(ref.idx[0])].id;
      const std::string& to = inst.departments[static_cast<std::size_t>(ref.idx[1])].id;
      const bool one =
          period.ordering.count({from, to, static_cast<Axis>(ref.idx[3])}) != 0;
      fixings.push_back({var, one ? 1.0 : 0.0});
    } else if (ref.kind == VarKind::B) {
      if (free.b.count({ref.idx[0], ref.idx[1], ref.idx[2]})) continue;
      const auto& period = incumbent.periods.at(static_cast<std::size_t>(ref.idx[2]));
      const std::string& id = inst.departments[static_cast<std::size_t>(ref.idx[0])].id;
      fixings.push_back({var, period.assignment.at(id) == ref.idx[1] ? 1.0 : 0.0});
    } else if (ref.kind == VarKind::L) {
      if (free.l.count({ref.idx[0], ref.idx[1], ref.idx[2]})) continue;
      const auto& period = incumbent.periods.at(static_cast<std::size_t>(ref.idx[1]));
      const std::string& id = inst.departments[static_cast<std::size_t>(ref.idx[0])].id;
      fixings.push_back({var, period.dept_half.at(id)[ref.idx[2]]});
    }
  }
  std::sort(fixings.begin(), fixings.end());
  model.fixings = std::move(fixings);
  return model;
}

}  // namespace zdflp

#endif  // ZDFLP_MODEL_HPP
