#pragma once

// Picard lattice of the blow-up X of P^2 at the ten points
// a, a1, b, b1, b2, b3, p(alpha), p(beta), q, r
// with basis (H, E_a, ..., E_r) and intersection form diag(1, -1, ..., -1).

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pcx/error.hpp"

namespace pcx {

inline constexpr std::size_t kLatticeRank = 11;
inline constexpr std::size_t kPoints = kLatticeRank - 1;

/// Blown-up points in basis order; E_<name> is basis vector index + 1.
inline const std::array<std::string, kPoints>& point_names() {
  static const std::array<std::string, kPoints> n{"a", "a1", "b", "b1", "b2", "b3", "p(alpha)", "p(beta)", "q", "r"};
  return n;
}

enum Pt : std::size_t { kA, kA1, kB, kB1, kB2, kB3, kPAlpha, kPBeta, kQ, kR };

class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(const std::array<long, kLatticeRank>& c) {
    for (std::size_t i = 0; i < kLatticeRank; ++i) c_[i] = c[i];
  }

  static DivisorClass H() { return basis(0); }
  static DivisorClass E(std::size_t point) { return basis(point + 1); }
  static DivisorClass basis(std::size_t i) {
    DivisorClass d;
    d.c_.at(i) = 1;
    return d;
  }

  const mpz_class& operator[](std::size_t i) const { return c_.at(i); }
  mpz_class& operator[](std::size_t i) { return c_.at(i); }
  bool is_zero() const {
    for (auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) {
    for (std::size_t i = 0; i < kLatticeRank; ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) {
    for (std::size_t i = 0; i < kLatticeRank; ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend DivisorClass operator*(const mpz_class& k, DivisorClass a) {
    for (auto& v : a.c_) v *= k;
    return a;
  }
  DivisorClass operator-() const { return mpz_class(-1) * *this; }
  friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < kLatticeRank; ++i) s += (i ? ", " : "") + c_[i].get_str();
    return s + "]";
  }

 private:
  std::array<mpz_class, kLatticeRank> c_{};
};

inline mpz_class pair(const DivisorClass& a, const DivisorClass& b) {
  mpz_class s = a[0] * b[0];
  for (std::size_t i = 1; i < kLatticeRank; ++i) s -= a[i] * b[i];
  return s;
}

inline long pair_l(const DivisorClass& a, const DivisorClass& b) { return pair(a, b).get_si(); }

/// K_X = -3H + sum of all exceptional classes.
inline DivisorClass canonical_class(std::size_t npoints = kPoints) {
  DivisorClass k = mpz_class(-3) * DivisorClass::H();
  for (std::size_t i = 0; i < npoints; ++i) k = k + DivisorClass::E(i);
  return k;
}

// ---------------------------------------------------------------------------
// Classes from blow-up data.

/// What the local blow-up computations report about the configuration:
/// multiplicities of each plane curve at each blown-up point, and for each
/// exceptional curve the later points proximate to it.
struct BlowUpData {
  struct Curve {
    std::string name;
    unsigned degree;
    std::array<unsigned, kPoints> multiplicity{};
  };
  struct Exceptional {
    std::string name;
    std::size_t point;
    std::array<bool, kPoints> proximate{};
  };
  std::vector<Curve> curves;
  std::vector<Exceptional> exceptionals;
};

/// A surface of the construction, given by the set of blown-up points.
struct Surface {
  std::string name;
  std::array<bool, kPoints> blown_up{};

  static Surface make(std::string name, std::initializer_list<std::size_t> pts) {
    Surface s{std::move(name), {}};
    for (auto p : pts) s.blown_up.at(p) = true;
    return s;
  }
  static Surface plane() { return make("P2", {}); }
  static Surface a_b_p() { return make("X(a,b,p)", {kA, kB, kPAlpha, kPBeta}); }
  static Surface x_prime() { return make("X'", {kA, kA1, kB, kB1, kB2, kB3, kPAlpha, kPBeta}); }
  static Surface x_q() { return make("X(q)", {kA, kA1, kB, kB1, kB2, kB3, kPAlpha, kPBeta, kQ}); }
  static Surface x() { return make("X", {kA, kA1, kB, kB1, kB2, kB3, kPAlpha, kPBeta, kQ, kR}); }
};

using ClassMap = std::vector<std::pair<std::string, DivisorClass>>;

inline const DivisorClass& class_of(const ClassMap& m, const std::string& name) {
  for (auto& [n, c] : m)
    if (n == name) return c;
  throw ParseError("no class named '" + name + "'");
}

/// Strict transforms on `s`: a plane curve of degree d is d H - sum m_i E_i,
/// an exceptional curve is E_i - sum of E_j over later points j proximate to i.
inline ClassMap configuration_classes(const BlowUpData& data, const Surface& s) {
  ClassMap out;
  for (auto& c : data.curves) {
    DivisorClass k = mpz_class(c.degree) * DivisorClass::H();
    for (std::size_t i = 0; i < kPoints; ++i)
      if (s.blown_up[i]) k = k - mpz_class(c.multiplicity[i]) * DivisorClass::E(i);
    out.emplace_back(c.name, k);
  }
  for (auto& e : data.exceptionals) {
    if (!s.blown_up[e.point]) continue;
    DivisorClass k = DivisorClass::E(e.point);
    for (std::size_t j = 0; j < kPoints; ++j)
      if (s.blown_up[j] && e.proximate[j]) k = k - DivisorClass::E(j);
    out.emplace_back(e.name, k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Figure tables.

/// Self-intersections, incidence edges and brackets (pairings with Gamma1
/// and Gamma2) of the special curves on one surface.
struct FigureTable {
  std::string surface;
  std::map<std::string, long> self;
  std::set<std::pair<std::string, std::string>> edges;  // unordered, stored sorted
  std::map<std::string, std::pair<long, long>> brackets;  // absent means (0, 0)
  std::optional<long> gamma_self;

  static std::pair<std::string, std::string> edge(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return {a, b};
  }
};

inline FigureTable figure_table(const ClassMap& classes, const std::string& surface) {
  FigureTable t;
  t.surface = surface;
  const DivisorClass& g1 = class_of(classes, "Gamma1");
  const DivisorClass& g2 = class_of(classes, "Gamma2");
  t.gamma_self = pair_l(g1, g1);
  std::vector<std::pair<std::string, DivisorClass>> special;
  for (auto& [n, c] : classes)
    if (n != "Gamma1" && n != "Gamma2") special.emplace_back(n, c);
  for (std::size_t i = 0; i < special.size(); ++i) {
    const auto& [n, c] = special[i];
    t.self[n] = pair_l(c, c);
    const long b1 = pair_l(c, g1), b2 = pair_l(c, g2);
    if (b1 != 0 || b2 != 0) t.brackets[n] = {b1, b2};
    for (std::size_t j = i + 1; j < special.size(); ++j) {
      const long v = pair_l(c, special[j].second);
      if (v < 0) throw NotContractible("distinct curves " + n + ", " + special[j].first + " pair negatively");
      if (v > 0) t.edges.insert(FigureTable::edge(n, special[j].first));
    }
  }
  return t;
}

/// Edge multiplicities other than 1 are reported separately by the figure
/// check; the golden tables record the drawn configuration.
namespace golden {

inline FigureTable plane() {
  FigureTable t;
  t.surface = "P2";
  t.self = {{"L_ab", 1}, {"L_ac", 1}, {"L_bc", 1}};
  t.edges = {FigureTable::edge("L_ab", "L_ac"), FigureTable::edge("L_ab", "L_bc"), FigureTable::edge("L_ac", "L_bc")};
  t.brackets = {{"L_ab", {4, 4}}, {"L_ac", {4, 4}}, {"L_bc", {4, 4}}};
  t.gamma_self = 16;
  return t;
}

inline FigureTable a_b_p() {
  FigureTable t;
  t.surface = "X(a,b,p)";
  t.self = {{"L_ab", -1}, {"L_ac", -2}, {"L_bc", 0}, {"E_a", -1}, {"E_b", -1}, {"E_p(alpha)", -1}, {"E_p(beta)", -1}};
  t.edges = {FigureTable::edge("L_ac", "E_a"),        FigureTable::edge("E_a", "L_ab"),
             FigureTable::edge("L_ab", "E_b"),        FigureTable::edge("E_b", "L_bc"),
             FigureTable::edge("L_bc", "L_ac"),       FigureTable::edge("L_ac", "E_p(alpha)"),
             FigureTable::edge("L_ac", "E_p(beta)")};
  t.brackets = {{"E_a", {1, 1}}, {"L_ab", {2, 2}}, {"E_b", {1, 1}}, {"L_bc", {3, 3}},
                {"E_p(alpha)", {3, 0}}, {"E_p(beta)", {0, 3}}};
  return t;
}

inline FigureTable x_prime() {
  FigureTable t;
  t.surface = "X'";
  t.self = {{"L_ac", -2}, {"E_a", -2},  {"E_a1", -1}, {"L_ab", -2},       {"E_b", -2},        {"E_b1", -2},
            {"E_b2", -2}, {"E_b3", -1}, {"L_bc", -3}, {"E_p(alpha)", -1}, {"E_p(beta)", -1}};
  t.edges = {FigureTable::edge("L_ac", "E_a"),       FigureTable::edge("E_a", "E_a1"),
             FigureTable::edge("E_a1", "L_ab"),      FigureTable::edge("L_ab", "E_b"),
             FigureTable::edge("E_b", "E_b1"),       FigureTable::edge("E_b1", "E_b2"),
             FigureTable::edge("E_b2", "E_b3"),      FigureTable::edge("E_b3", "L_bc"),
             FigureTable::edge("L_bc", "L_ac"),      FigureTable::edge("L_ac", "E_p(alpha)"),
             FigureTable::edge("L_ac", "E_p(beta)")};
  t.brackets = {{"E_a1", {1, 1}}, {"E_p(alpha)", {3, 0}}, {"E_p(beta)", {0, 3}}, {"E_b3", {1, 1}}, {"L_ab", {1, 1}}};
  t.gamma_self = 1;
  return t;
}

inline FigureTable x_q() {
  FigureTable t = x_prime();
  t.surface = "X(q)";
  t.self["E_b3"] = -2;
  t.self["E_q"] = -1;
  t.edges.insert(FigureTable::edge("E_b3", "E_q"));
  t.brackets.erase("E_b3");
  t.brackets["E_q"] = {1, 1};
  t.gamma_self = 0;
  return t;
}

inline FigureTable x() {
  FigureTable t = x_q();
  t.surface = "X";
  t.self["E_q"] = -2;
  t.self["E_r"] = -1;
  t.edges.insert(FigureTable::edge("E_q", "E_r"));
  t.brackets.erase("E_q");
  t.brackets["E_r"] = {1, 1};
  t.gamma_self = -1;
  return t;
}

}  // namespace golden

/// Human-readable differences between a computed and a golden table.
inline std::vector<std::string> compare_tables(const FigureTable& got, const FigureTable& want) {
  std::vector<std::string> diffs;
  for (auto& [n, v] : want.self) {
    auto it = got.self.find(n);
    if (it == got.self.end())
      diffs.push_back(want.surface + ": missing curve " + n);
    else if (it->second != v)
      diffs.push_back(want.surface + ": " + n + "^2 = " + std::to_string(it->second) + ", expected " + std::to_string(v));
  }
  for (auto& [n, v] : got.self)
    if (!want.self.count(n)) diffs.push_back(want.surface + ": unexpected curve " + n);
  for (auto& e : want.edges)
    if (!got.edges.count(e)) diffs.push_back(want.surface + ": missing edge " + e.first + " - " + e.second);
  for (auto& e : got.edges)
    if (!want.edges.count(e)) diffs.push_back(want.surface + ": unexpected edge " + e.first + " - " + e.second);
  auto bracket = [](const FigureTable& t, const std::string& n) {
    auto it = t.brackets.find(n);
    return it == t.brackets.end() ? std::pair<long, long>{0, 0} : it->second;
  };
  for (auto& [n, v] : want.self) {
    const auto g = bracket(got, n), w = bracket(want, n);
    if (g != w)
      diffs.push_back(want.surface + ": bracket of " + n + " is [" + std::to_string(g.first) + "/" + std::to_string(g.second) +
                      "], expected [" + std::to_string(w.first) + "/" + std::to_string(w.second) + "]");
  }
  if (want.gamma_self && got.gamma_self != want.gamma_self)
    diffs.push_back(want.surface + ": Gamma self-intersection " + std::to_string(got.gamma_self.value_or(0)) + ", expected " +
                    std::to_string(*want.gamma_self));
  return diffs;
}

/// Curves of self-intersection <= -2 on a table.
inline std::vector<std::string> negative_part(const FigureTable& t) {
  std::vector<std::string> out;
  for (auto& [n, v] : t.self)
    if (v <= -2) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Contractions.

struct ContractionStep {
  std::size_t stage;  // 1-based
  std::string name;
  DivisorClass contracted;  // class of the curve at this stage
  long self;                // its self-intersection at this stage
  long canonical_degree;    // K . E at this stage
  long k_squared_after;
};

struct ContractionTrace {
  std::vector<ContractionStep> steps;
  ClassMap final_classes;  // pullbacks of the pushed classes
  DivisorClass canonical;  // pullback of the final canonical class
};

/// Contraction order for eta_i: Gamma_i first, then the curves of R.
inline std::vector<std::string> contraction_order(int i) {
  return {i == 1 ? "Gamma1" : "Gamma2", "L_ab", "E_b", "E_b1", "E_b2", "E_b3", "E_q", "L_bc", "L_ac", "E_a"};
}

/// Contracts the named curves in order. Contracting E pushes every class C to
/// C + (C.E) E (represented by its pullback), the canonical class included.
inline ContractionTrace contract_sequence(const ClassMap& classes, const std::vector<std::string>& order) {
  ContractionTrace tr;
  tr.final_classes = classes;
  tr.canonical = canonical_class();
  for (std::size_t k = 0; k < order.size(); ++k) {
    const DivisorClass e = class_of(tr.final_classes, order[k]);
    const long self = pair_l(e, e), kdeg = pair_l(tr.canonical, e);
    if (self != -1 || kdeg != -1)
      throw NotContractible("stage " + std::to_string(k + 1) + ": " + order[k] + " has self-intersection " +
                            std::to_string(self) + " and canonical degree " + std::to_string(kdeg));
    for (auto& [n, c] : tr.final_classes) {
      if (n == order[k]) continue;
      const mpz_class m = pair(c, e);
      if (m < 0 && !c.is_zero())
        throw NotContractible("stage " + std::to_string(k + 1) + ": " + n + " pairs negatively with " + order[k]);
    }
    for (auto& [n, c] : tr.final_classes) c = c + pair(c, e) * e;
    tr.canonical = tr.canonical + pair(tr.canonical, e) * e;
    tr.steps.push_back({k + 1, order[k], e, self, kdeg, pair_l(tr.canonical, tr.canonical)});
  }
  return tr;
}

inline ContractionTrace contract_sequence(const ClassMap& classes, int i) {
  return contract_sequence(classes, contraction_order(i));
}

/// Line class of the final plane, -K/3.
inline DivisorClass line_class(const ContractionTrace& tr) {
  DivisorClass l;
  for (std::size_t j = 0; j < kLatticeRank; ++j) {
    mpz_class v = -tr.canonical[j];
    if (v % 3 != 0) throw NotContractible("final canonical class is not divisible by 3");
    l[j] = v / 3;
  }
  return l;
}

struct DegreeResult {
  long degree;
  long self_intersection;  // of the image curve
  long line_square;
};

/// Degree of eta_i(Gamma_j), j = 3 - i.
inline DegreeResult image_degree(const ClassMap& classes, int i) {
  const ContractionTrace tr = contract_sequence(classes, i);
  const DivisorClass l = line_class(tr);
  const DivisorClass& img = class_of(tr.final_classes, i == 1 ? "Gamma2" : "Gamma1");
  return {pair_l(img, l), pair_l(img, img), pair_l(l, l)};
}

struct TowerCheck {
  bool one_minus_one_curve = false;   // exactly one contracted curve is a (-1)-curve on X
  bool chain = false;                 // each contracted curve meets the next at its stage
  bool other_gamma_minus_one = false; // Gamma_j^2 = -1 on X
  bool k_squared_nine = false;
  bool ok() const { return one_minus_one_curve && chain && other_gamma_minus_one && k_squared_nine; }
};

inline TowerCheck tower_resolution_check(const ClassMap& classes, int i, const std::vector<std::string>& order) {
  TowerCheck out;
  int minus_one = 0;
  for (auto& n : order) {
    const DivisorClass& c = class_of(classes, n);
    if (pair_l(c, c) == -1) ++minus_one;
  }
  out.one_minus_one_curve = minus_one == 1;
  const DivisorClass& other = class_of(classes, i == 1 ? "Gamma2" : "Gamma1");
  out.other_gamma_minus_one = pair_l(other, other) == -1;
  try {
    ClassMap cur = classes;
    DivisorClass k = canonical_class();
    out.chain = true;
    for (std::size_t s = 0; s < order.size(); ++s) {
      const DivisorClass e = class_of(cur, order[s]);
      if (pair_l(e, e) != -1) throw NotContractible(order[s]);
      if (s + 1 < order.size() && pair_l(e, class_of(cur, order[s + 1])) <= 0) out.chain = false;
      for (auto& [n, c] : cur) c = c + pair(c, e) * e;
      k = k + pair(k, e) * e;
    }
    out.k_squared_nine = pair_l(k, k) == 9;
  } catch (const NotContractible&) {
    out.chain = false;
  }
  return out;
}

inline TowerCheck tower_resolution_check(const ClassMap& classes, int i) {
  return tower_resolution_check(classes, i, contraction_order(i));
}

// ---------------------------------------------------------------------------
// Lattice utilities.

/// Gram matrix of a list of classes.
inline std::vector<std::vector<mpz_class>> gram_matrix(const std::vector<DivisorClass>& cs) {
  std::vector<std::vector<mpz_class>> g(cs.size(), std::vector<mpz_class>(cs.size()));
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) g[i][j] = pair(cs[i], cs[j]);
  return g;
}

struct Signature {
  std::size_t positive = 0, negative = 0, zero = 0;
};

/// Signature of a symmetric integer matrix by congruence diagonalisation
/// over Q.
inline Signature signature(const std::vector<std::vector<mpz_class>>& gram) {
  const std::size_t n = gram.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gram[i][j];
  Signature sig;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // Pick a remaining index with nonzero diagonal; otherwise create one
    // from an off-diagonal entry (i, j) by adding row/column j to i.
    std::optional<std::size_t> piv;
    for (std::size_t i = 0; i < n && !piv; ++i)
      if (!done[i] && a[i][i] != 0) piv = i;
    if (!piv) {
      for (std::size_t i = 0; i < n && !piv; ++i)
        for (std::size_t j = 0; j < n && !piv; ++j)
          if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
            for (std::size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
            for (std::size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
            piv = i;
          }
    }
    if (!piv) break;
    const std::size_t p = *piv;
    done[p] = true;
    (a[p][p] > 0 ? sig.positive : sig.negative)++;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][p] == 0) continue;
      const mpq_class f = a[i][p] / a[p][p];
      for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[p][k];
      for (std::size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][p];
    }
  }
  sig.zero = n - sig.positive - sig.negative;
  return sig;
}

}  // namespace pcx
