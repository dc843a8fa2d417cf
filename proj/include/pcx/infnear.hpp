#pragma once

// Affine charts of iterated point blow-ups of P^2. A chart is a polynomial
// map (s, t) -> P^2 built from a standard affine chart by the substitutions
// (s, t) -> (c1 + s t, c2 + t)   (first branch, exceptional curve t = 0)
// (s, t) -> (c1 + s, c2 + s t)   (second branch, exceptional curve s = 0).

#include <array>
#include <string>
#include <vector>

#include "pcx/curves.hpp"

namespace pcx {

enum class Branch { first, second };

struct BlowUpRecord {
  std::array<FieldValue, 2> center;
  Branch branch;

  friend bool operator==(const BlowUpRecord&, const BlowUpRecord&) = default;
};

class ChartMap {
 public:
  /// The affine chart where coordinate `one` equals 1 and the remaining two
  /// coordinates are s and t.
  static ChartMap affine(Field f, std::size_t one, std::size_t s_coord, std::size_t t_coord) {
    if (one > 2 || s_coord > 2 || t_coord > 2 || one == s_coord || one == t_coord || s_coord == t_coord)
      throw ParseError("affine chart needs a permutation of (x, y, z)");
    ChartMap c(f, {one, s_coord, t_coord});
    c.components_[one] = Poly::constant(f, local_vars(), 1);
    c.components_[s_coord] = Poly::variable(f, local_vars(), 0);
    c.components_[t_coord] = Poly::variable(f, local_vars(), 1);
    return c;
  }

  /// Replays a blow-up history from the affine chart `base`.
  static ChartMap rebuild(Field f, std::array<std::size_t, 3> base, const std::vector<BlowUpRecord>& history) {
    ChartMap c = affine(f, base[0], base[1], base[2]);
    for (auto& r : history) c = c.extended(r);
    return c;
  }

  Field field() const noexcept { return field_; }
  const std::array<std::size_t, 3>& base() const noexcept { return base_; }
  const std::array<Poly, 3>& components() const noexcept { return components_; }
  const std::vector<BlowUpRecord>& history() const noexcept { return history_; }
  std::size_t level() const noexcept { return history_.size(); }

  /// The substitution of blow-up step k as images of (s, t).
  std::array<Poly, 2> step_substitution(std::size_t k) const { return substitution(field_, history_.at(k)); }

  static std::array<Poly, 2> substitution(Field f, const BlowUpRecord& r) {
    const Poly s = Poly::variable(f, local_vars(), 0), t = Poly::variable(f, local_vars(), 1);
    const Poly c1 = Poly::constant(f, local_vars(), r.center[0]), c2 = Poly::constant(f, local_vars(), r.center[1]);
    if (r.branch == Branch::first) return {c1 + s * t, c2 + t};
    return {c1 + s, c2 + s * t};
  }

  ChartMap extended(const BlowUpRecord& r) const {
    ChartMap c = *this;
    const auto sub = substitution(field_, r);
    for (auto& comp : c.components_) comp = comp.substitute(sub);
    c.history_.push_back(r);
    return c;
  }

  std::string to_string() const {
    return "(" + components_[0].to_string() + " : " + components_[1].to_string() + " : " + components_[2].to_string() + ")";
  }

  friend bool operator==(const ChartMap& a, const ChartMap& b) {
    return a.field_ == b.field_ && a.base_ == b.base_ && a.history_ == b.history_;
  }

 private:
  ChartMap(Field f, std::array<std::size_t, 3> base)
      : field_(f), base_(base), components_{Poly(f, local_vars()), Poly(f, local_vars()), Poly(f, local_vars())} {}

  Field field_;
  std::array<std::size_t, 3> base_;
  std::array<Poly, 3> components_;
  std::vector<BlowUpRecord> history_;
};

/// A point of a chart; at chart level m it is a point in the m-th
/// neighbourhood of its image in P^2.
struct ChartPoint {
  ChartMap chart;
  std::array<FieldValue, 2> coords;

  static ChartPoint at(const ChartMap& c, const FieldValue& s, const FieldValue& t) { return {c, {s, t}}; }
  std::size_t level() const { return chart.level(); }
  ProjPoint image() const {
    const auto& comp = chart.components();
    return ProjPoint(comp[0].evaluate(coords), comp[1].evaluate(coords), comp[2].evaluate(coords));
  }
};

struct LocalEquation {
  Poly poly;                                                   // in (s, t)
  std::vector<std::pair<std::size_t, unsigned>> exceptional_orders;  // (blow-up index, divided order)

  std::vector<unsigned> orders() const {
    std::vector<unsigned> out;
    for (auto& [i, k] : exceptional_orders) out.push_back(k);
    return out;
  }
};

inline ChartMap blow_up(const ChartMap& chart, const ChartPoint& center, Branch branch) {
  if (!(center.chart == chart)) throw CenterNotInChart("blow-up centre is given in a different chart");
  return chart.extended({center.coords, branch});
}

/// Pulls a local equation at chart level `from` through the remaining
/// blow-ups of `chart`, dividing out each new exceptional factor.
inline LocalEquation replay(Poly local, const ChartMap& chart, std::size_t from) {
  LocalEquation out{std::move(local), {}};
  for (std::size_t k = from; k < chart.level(); ++k) {
    const auto sub = chart.step_substitution(k);
    out.poly = out.poly.substitute(sub);
    if (out.poly.is_zero()) throw CurveContainsChartImage("pullback vanishes identically");
    const std::size_t ex = chart.history()[k].branch == Branch::first ? 1 : 0;
    const unsigned m = out.poly.valuation_in(ex);
    out.poly = out.poly.divide_by_power(ex, m);
    out.exceptional_orders.emplace_back(k, m);
  }
  return out;
}

inline LocalEquation strict_transform(const PlaneCurve& c, const ChartMap& chart) {
  const ChartMap base = ChartMap::affine(chart.field(), chart.base()[0], chart.base()[1], chart.base()[2]);
  Poly local = c.equation().substitute(base.components());
  if (local.is_zero()) throw CurveContainsChartImage("curve contains the chart image");
  return replay(std::move(local), chart, 0);
}

/// Local equation of the exceptional curve of blow-up k, followed to the
/// level of `chart`. Its divided orders record proximity: a later centre j is
/// proximate to k exactly when the order at step j is positive.
inline LocalEquation exceptional_transform(const ChartMap& chart, std::size_t k) {
  if (k >= chart.level()) throw CenterNotInChart("no blow-up with that index in the chart history");
  const std::size_t ex = chart.history()[k].branch == Branch::first ? 1 : 0;
  return replay(Poly::variable(chart.field(), local_vars(), ex), chart, k + 1);
}

inline std::vector<bool> proximate_to(const ChartMap& chart, std::size_t k) {
  std::vector<bool> out(chart.level(), false);
  for (auto& [j, m] : exceptional_transform(chart, k).exceptional_orders) out[j] = m > 0;
  return out;
}

inline bool vanishes_at(const LocalEquation& e, const std::array<FieldValue, 2>& pt) {
  return e.poly.evaluate(pt).is_zero();
}

/// Order of the local equation at a chart point (its multiplicity there).
inline unsigned order_at(const Poly& local, const std::array<FieldValue, 2>& pt) {
  const Field f = local.field();
  const std::array<Poly, 2> shift{Poly::variable(f, local_vars(), 0) + Poly::constant(f, local_vars(), pt[0]),
                                  Poly::variable(f, local_vars(), 1) + Poly::constant(f, local_vars(), pt[1])};
  return static_cast<unsigned>(local.substitute(shift).order());
}

inline bool passes_through(const PlaneCurve& c, const ChartPoint& p) {
  return vanishes_at(strict_transform(c, p.chart), p.coords);
}

// ---------------------------------------------------------------------------
// Intersection numbers by blowing up: I_p(F, G) = m_p(F) m_p(G) + sum over
// the common points q of the first neighbourhood of I_q(F~, G~).

namespace detail {

/// Lowest-degree homogeneous part of a local equation as a univariate
/// polynomial in s at t = 1, together with its degree.
inline std::pair<UPoly, unsigned> tangent_cone(const Poly& f) {
  const unsigned m = static_cast<unsigned>(f.order());
  std::vector<FieldValue> c;
  for (auto& [e, v] : f.terms()) {
    if (e[0] + e[1] != m) continue;
    if (c.size() <= e[0]) c.resize(e[0] + 1, FieldValue::zero(f.field()));
    c[e[0]] = v;
  }
  return {UPoly(f.field(), std::move(c)), m};
}

inline Poly translate(const Poly& f, const FieldValue& s0) {
  const Field F = f.field();
  const std::array<Poly, 2> sub{Poly::variable(F, local_vars(), 0) + Poly::constant(F, local_vars(), s0),
                                Poly::variable(F, local_vars(), 1)};
  return f.substitute(sub);
}

inline Poly blow_origin(const Poly& f, Branch b, unsigned m) {
  const Field F = f.field();
  const Poly s = Poly::variable(F, local_vars(), 0), t = Poly::variable(F, local_vars(), 1);
  if (b == Branch::first) return f.substitute(std::array<Poly, 2>{s * t, t}).divide_by_power(1, m);
  return f.substitute(std::array<Poly, 2>{s, s * t}).divide_by_power(0, m);
}

inline unsigned blowup_local(const Poly& F, const Poly& G, unsigned depth) {
  if (depth > 1000) throw InfiniteMultiplicity("blow-up recursion did not separate the curves");
  if (!vanishes_at_origin(F) || !vanishes_at_origin(G)) return 0;
  auto [cf, m] = tangent_cone(F);
  auto [cg, n] = tangent_cone(G);
  unsigned total = m * n;
  // Common tangent directions (s0 : 1) and possibly (1 : 0). As binary forms
  // the cones have degrees m and n; a drop in s-degree means (1 : 0) is a root.
  const UPoly common = gcd(cf, cg);
  const bool has_inf = static_cast<unsigned>(cf.degree()) < m && static_cast<unsigned>(cg.degree()) < n;
  unsigned rational = 0;
  const Poly F1 = blow_origin(F, Branch::first, m), G1 = blow_origin(G, Branch::first, n);
  for (auto& [s0, k] : base_field_roots(common)) {
    rational += k;
    total += blowup_local(translate(F1, s0), translate(G1, s0), depth + 1);
  }
  if (rational != static_cast<unsigned>(std::max(common.degree(), 0)))
    throw CenterNotInChart("common tangent direction not defined over the base field");
  if (has_inf) total += blowup_local(blow_origin(F, Branch::second, m), blow_origin(G, Branch::second, n), depth + 1);
  return total;
}

}  // namespace detail

inline unsigned intersection_multiplicity_by_blowup(const PlaneCurve& c, const PlaneCurve& d, const ProjPoint& p) {
  Poly F = local_equation(c.equation(), p), G = local_equation(d.equation(), p);
  if (!detail::vanishes_at_origin(F) || !detail::vanishes_at_origin(G)) return 0;
  auto [F2, G2] = strip_common_unit(F, G);
  return detail::blowup_local(F2, G2, 0);
}

}  // namespace pcx
