#pragma once

// Linear systems of plane curves cut out by point and chart conditions.

#include <functional>
#include <string>
#include <vector>

#include "pcx/infnear.hpp"
#include "pcx/linalg.hpp"

namespace pcx {

/// All monomials of degree d in (x, y, z), graded-lex largest first.
inline std::vector<Exponents> monomial_basis(unsigned d) {
  std::vector<Exponents> out;
  for (unsigned i = d + 1; i-- > 0;)
    for (unsigned j = d - i + 1; j-- > 0;) out.push_back({i, j, d - i - j});
  return out;
}

/// A linear functional on degree-d forms.
struct LinearCondition {
  std::string label;
  std::function<FieldValue(const Poly&)> functional;

  static LinearCondition through(const ProjPoint& p, std::string label = {}) {
    return {label.empty() ? "through " + p.to_string() : std::move(label),
            [p](const Poly& f) { return f.evaluate(p.coords()); }};
  }

  /// Coefficient of s^i t^j in the pullback of the form through the chart,
  /// expanded at the chart point.
  static LinearCondition chart_coefficient(const ChartPoint& p, unsigned i, unsigned j, std::string label) {
    const Field F = p.chart.field();
    const std::array<Poly, 2> shift{Poly::variable(F, local_vars(), 0) + Poly::constant(F, local_vars(), p.coords[0]),
                                    Poly::variable(F, local_vars(), 1) + Poly::constant(F, local_vars(), p.coords[1])};
    std::array<Poly, 3> comp = p.chart.components();
    for (auto& c : comp) c = c.substitute(shift);
    return {std::move(label), [comp, i, j](const Poly& f) { return f.substitute(comp).coefficient({i, j}); }};
  }

  /// Multiplicity at least m at a point of P^2: all Taylor coefficients of
  /// order below m vanish (m(m+1)/2 conditions).
  static std::vector<LinearCondition> multiplicity(const ProjPoint& p, unsigned m, const std::string& name) {
    const Field F = p.field();
    const std::size_t one = p.chart();
    std::size_t s_coord = one == 0 ? 1 : 0;
    std::size_t t_coord = 3 - one - s_coord;
    const ChartMap chart = ChartMap::affine(F, one, s_coord, t_coord);
    const ChartPoint cp = ChartPoint::at(chart, p[s_coord], p[t_coord]);
    std::vector<LinearCondition> out;
    for (unsigned k = 0; k < m; ++k)
      for (unsigned i = 0; i <= k; ++i)
        out.push_back(chart_coefficient(cp, i, k - i, name + " [s^" + std::to_string(i) + " t^" + std::to_string(k - i) + "]"));
    return out;
  }
};

inline Matrix condition_matrix(Field f, unsigned degree, const std::vector<LinearCondition>& conditions) {
  const auto basis = monomial_basis(degree);
  Matrix m(conditions.size(), Row(basis.size(), FieldValue::zero(f)));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const Poly mono = Poly::monomial(f, plane_vars(), basis[c], FieldValue::one(f));
    for (std::size_t r = 0; r < conditions.size(); ++r) m[r][c] = conditions[r].functional(mono);
  }
  return m;
}

/// Basis of the degree-d forms satisfying every condition, as curves.
inline std::vector<PlaneCurve> solve_curve_conditions(Field f, unsigned degree, const std::vector<LinearCondition>& conditions) {
  const auto basis = monomial_basis(degree);
  const auto kernel = kernel_basis(condition_matrix(f, degree, conditions), basis.size(), f);
  std::vector<PlaneCurve> out;
  for (auto& v : kernel) {
    Poly p(f, plane_vars());
    for (std::size_t c = 0; c < basis.size(); ++c) p.add_term(basis[c], v[c]);
    out.emplace_back(p);
  }
  return out;
}

}  // namespace pcx
