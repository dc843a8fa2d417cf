#pragma once

// The pair of quartics Gamma1, Gamma2 for parameters (alpha, beta, lambda, mu)
// and the checks and verdicts built on them.

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "pcx/binaryforms.hpp"
#include "pcx/infnear.hpp"
#include "pcx/linear_system.hpp"
#include "pcx/picard.hpp"

namespace pcx {

struct ParameterSet {
  Field field;
  FieldValue alpha, beta, lambda, mu;

  /// Validates the constraints alpha, beta, lambda != 0, alpha != beta and
  /// |K| > 2; throws DegenerateParameters otherwise.
  static ParameterSet make(Field f, FieldValue alpha, FieldValue beta, FieldValue lambda, FieldValue mu) {
    for (auto* v : {&alpha, &beta, &lambda, &mu})
      if (v->field() != f) throw DescriptorMismatch("parameter not in the declared field");
    if (f->is_finite() && f->order() <= 2) throw DegenerateParameters("the field must have more than two elements");
    if (alpha.is_zero() || beta.is_zero()) throw DegenerateParameters("alpha and beta must be nonzero");
    if (lambda.is_zero()) throw DegenerateParameters("lambda must be nonzero");
    if (alpha == beta) throw DegenerateParameters("alpha and beta must differ");
    return {f, std::move(alpha), std::move(beta), std::move(lambda), std::move(mu)};
  }
  static ParameterSet parse(const std::string& field, const std::string& a, const std::string& b, const std::string& l,
                            const std::string& m) {
    const Field f = Field::parse(field);
    return make(f, parse_element(f, a), parse_element(f, b), parse_element(f, l), parse_element(f, m));
  }

  const FieldValue& theta(int which) const { return which == 1 ? alpha : beta; }
  std::string to_string() const {
    return f_str() + " alpha=" + alpha.to_string() + " beta=" + beta.to_string() + " lambda=" + lambda.to_string() +
           " mu=" + mu.to_string();
  }

 private:
  std::string f_str() const { return field->to_string(); }
};

// ---------------------------------------------------------------------------
// Points, lines and charts of the construction.

inline ProjPoint point_a(Field f) { return ProjPoint::of(f, 1, 0, 0); }
inline ProjPoint point_b(Field f) { return ProjPoint::of(f, 0, 1, 0); }
inline ProjPoint point_c(Field f) { return ProjPoint::of(f, 0, 0, 1); }
inline ProjPoint point_p(const FieldValue& theta) {
  const Field f = theta.field();
  return ProjPoint(theta, FieldValue::zero(f), FieldValue::one(f));
}
inline PlaneCurve line_ab(Field f) { return PlaneCurve::parse(f, "z"); }
inline PlaneCurve line_ac(Field f) { return PlaneCurve::parse(f, "y"); }
inline PlaneCurve line_bc(Field f) { return PlaneCurve::parse(f, "x"); }

/// Chart at a (x = 1, z -> s, y -> t) followed by `level` blow-ups along L_ab:
/// a, then a1.
inline ChartMap chart_a(Field f, std::size_t level) {
  ChartMap c = ChartMap::affine(f, 0, 2, 1);
  const FieldValue zero = FieldValue::zero(f);
  for (std::size_t i = 0; i < level; ++i) c = blow_up(c, ChartPoint::at(c, zero, zero), Branch::first);
  return c;
}

/// Chart at b (y = 1, x -> s, z -> t) followed by `level` blow-ups: b, b1,
/// b2, b3 along L_bc, then q(lambda) = (lambda, 0), then r(lambda, mu) = (mu, 0).
inline ChartMap chart_b(const ParameterSet& p, std::size_t level) {
  const Field f = p.field;
  ChartMap c = ChartMap::affine(f, 1, 0, 2);
  const FieldValue zero = FieldValue::zero(f);
  for (std::size_t i = 0; i < level; ++i) {
    const FieldValue s0 = i < 4 ? zero : (i == 4 ? p.lambda : p.mu);
    c = blow_up(c, ChartPoint::at(c, s0, zero), Branch::first);
  }
  return c;
}

/// Chart at p(theta) (z = 1, x -> s, y -> t), blown up once at (theta, 0).
inline ChartMap chart_p(const FieldValue& theta, std::size_t level) {
  const Field f = theta.field();
  ChartMap c = ChartMap::affine(f, 2, 0, 1);
  if (level > 0) c = blow_up(c, ChartPoint::at(c, theta, FieldValue::zero(f)), Branch::first);
  return c;
}

inline ChartPoint point_q(const ParameterSet& p) { return ChartPoint::at(chart_b(p, 4), p.lambda, FieldValue::zero(p.field)); }
inline ChartPoint point_r(const ParameterSet& p) { return ChartPoint::at(chart_b(p, 5), p.mu, FieldValue::zero(p.field)); }

// ---------------------------------------------------------------------------
// The quartics.

/// l^2 z (t z - x)^3 + t^2 x y^2 (m (t z - x) - t l y).
inline Poly gamma_equation(const FieldValue& theta, const FieldValue& lambda, const FieldValue& mu) {
  const Field f = theta.field();
  const Poly x = Poly::variable(f, plane_vars(), 0), y = Poly::variable(f, plane_vars(), 1), z = Poly::variable(f, plane_vars(), 2);
  const Poly w = z.scaled(theta) - x;
  return (z * w.pow(3)).scaled(lambda.pow(2)) + (x * y.pow(2) * (w.scaled(mu) - y.scaled(theta * lambda))).scaled(theta.pow(2));
}

/// The fourteen linear conditions defining the member of Omega_theta through
/// q(lambda) and r(lambda, mu).
inline std::vector<LinearCondition> omega_conditions(const ParameterSet& p, const FieldValue& theta) {
  const Field f = p.field;
  const FieldValue zero = FieldValue::zero(f);
  auto conds = LinearCondition::multiplicity(point_p(theta), 3, "mult 3 at p(" + theta.to_string() + ")");
  conds.push_back(LinearCondition::chart_coefficient(ChartPoint::at(chart_a(f, 0), zero, zero), 0, 0, "through a"));
  conds.push_back(LinearCondition::chart_coefficient(ChartPoint::at(chart_a(f, 1), zero, zero), 0, 1, "tangent to L_ab at a"));
  const char* names[] = {"through b", "through b1", "through b2", "through b3"};
  for (unsigned k = 0; k < 4; ++k)
    conds.push_back(LinearCondition::chart_coefficient(ChartPoint::at(chart_b(p, k), zero, zero), 0, k, names[k]));
  conds.push_back(LinearCondition::chart_coefficient(point_q(p), 0, 4, "through q(lambda)"));
  conds.push_back(LinearCondition::chart_coefficient(point_r(p), 0, 5, "through r(lambda,mu)"));
  return conds;
}

struct GammaBuild {
  PlaneCurve closed_form;
  std::size_t kernel_dimension;
  std::optional<PlaneCurve> solved;  // set when the kernel is one-dimensional
  bool matches() const { return solved && *solved == closed_form; }
  BirationalityCertificate irreducibility;
};

struct GammaPair {
  GammaBuild g1, g2;
  const PlaneCurve& gamma(int which) const { return which == 1 ? g1.closed_form : g2.closed_form; }
};

inline GammaBuild build_gamma(const ParameterSet& p, int which) {
  const FieldValue& t = p.theta(which);
  GammaBuild b{PlaneCurve(gamma_equation(t, p.lambda, p.mu)), 0, std::nullopt, {}};
  const auto kernel = solve_curve_conditions(p.field, 4, omega_conditions(p, t));
  b.kernel_dimension = kernel.size();
  if (kernel.size() != 1)
    throw NotUnique("the 14-condition system for Gamma" + std::to_string(which) + " has a kernel of dimension " +
                    std::to_string(kernel.size()));
  b.solved = kernel.front();
  b.irreducibility = certify_birational(build_parametrization(t, p.lambda, p.mu), b.closed_form, t);
  if (!b.irreducibility.ok()) throw Reducible("Gamma" + std::to_string(which) + " is not the image of a birational parametrisation");
  return b;
}

inline GammaPair build_gammas(const ParameterSet& p) { return {build_gamma(p, 1), build_gamma(p, 2)}; }

// ---------------------------------------------------------------------------
// Checks.

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

inline bool all_passed(const std::vector<Check>& cs) {
  for (auto& c : cs)
    if (!c.passed) return false;
  return true;
}

inline std::vector<Check> verify_omega_curve(const ParameterSet& p, const PlaneCurve& g, const FieldValue& theta) {
  const Field f = p.field;
  std::vector<Check> out;
  const unsigned m = multiplicity_at(g, point_p(theta));
  out.push_back({"multiplicity 3 at p(theta)", m == 3, "multiplicity " + std::to_string(m)});
  out.push_back({"through a", evaluate(g, point_a(f)).is_zero(), ""});
  const unsigned ia = intersection_multiplicity(g, line_ab(f), point_a(f));
  out.push_back({"tangent to L_ab at a", ia >= 2, "I_a(Gamma, L_ab) = " + std::to_string(ia)});
  const unsigned ib = intersection_multiplicity(g, line_bc(f), point_b(f));
  // Restriction to x = 0 as a binary form in (y, z); b alone means c z^4.
  const Poly r = g.equation().restrict(0, FieldValue::zero(f));
  const bool only_b = r.size() == 1 && r.leading_monomial() == Exponents{0, 0, 4};
  out.push_back({"meets L_bc only at b", ib == 4 && only_b,
                 "I_b(Gamma, L_bc) = " + std::to_string(ib) + ", restriction " + r.to_string()});
  const auto orders = strict_transform(g, chart_b(p, 6)).orders();
  std::string ord;
  for (auto o : orders) ord += (ord.empty() ? "" : ",") + std::to_string(o);
  out.push_back({"through b, b1, b2, b3, q, r", orders == std::vector<unsigned>(6, 1), "orders [" + ord + "]"});
  out.push_back({"through q(lambda)", passes_through(g, point_q(p)), ""});
  out.push_back({"through r(lambda,mu)", passes_through(g, point_r(p)), ""});
  return out;
}

inline std::vector<Check> verify_omega(const ParameterSet& p, int which) {
  return verify_omega_curve(p, PlaneCurve(gamma_equation(p.theta(which), p.lambda, p.mu)), p.theta(which));
}

// ---------------------------------------------------------------------------
// Blow-up data and figures.

inline BlowUpData blowup_data(const ParameterSet& p) {
  const Field f = p.field;
  BlowUpData d;
  const ChartMap ca = chart_a(f, 2), cb = chart_b(p, 6), cpa = chart_p(p.alpha, 1), cpb = chart_p(p.beta, 1);
  const std::array<std::size_t, 2> a_pts{kA, kA1};
  const std::array<std::size_t, 6> b_pts{kB, kB1, kB2, kB3, kQ, kR};
  auto add_curve = [&](const std::string& name, const PlaneCurve& c) {
    BlowUpData::Curve cur{name, c.degree(), {}};
    const auto oa = strict_transform(c, ca).orders(), ob = strict_transform(c, cb).orders();
    for (std::size_t i = 0; i < 2; ++i) cur.multiplicity[a_pts[i]] = oa[i];
    for (std::size_t i = 0; i < 6; ++i) cur.multiplicity[b_pts[i]] = ob[i];
    cur.multiplicity[kPAlpha] = strict_transform(c, cpa).orders()[0];
    cur.multiplicity[kPBeta] = strict_transform(c, cpb).orders()[0];
    d.curves.push_back(cur);
  };
  add_curve("Gamma1", PlaneCurve(gamma_equation(p.alpha, p.lambda, p.mu)));
  add_curve("Gamma2", PlaneCurve(gamma_equation(p.beta, p.lambda, p.mu)));
  add_curve("L_ab", line_ab(f));
  add_curve("L_ac", line_ac(f));
  add_curve("L_bc", line_bc(f));
  auto add_exc = [&](const std::string& name, const ChartMap& chart, std::size_t k, const auto& pts) {
    BlowUpData::Exceptional e{name, pts[k], {}};
    const auto prox = proximate_to(chart, k);
    for (std::size_t j = 0; j < prox.size(); ++j) e.proximate[pts[j]] = prox[j];
    d.exceptionals.push_back(e);
  };
  add_exc("E_a", ca, 0, a_pts);
  add_exc("E_a1", ca, 1, a_pts);
  const char* bn[] = {"E_b", "E_b1", "E_b2", "E_b3", "E_q", "E_r"};
  for (std::size_t k = 0; k < 6; ++k) add_exc(bn[k], cb, k, b_pts);
  d.exceptionals.push_back({"E_p(alpha)", kPAlpha, {}});
  d.exceptionals.push_back({"E_p(beta)", kPBeta, {}});
  return d;
}

inline ClassMap configuration_classes(const ParameterSet& p, const Surface& s = Surface::x()) {
  return configuration_classes(blowup_data(p), s);
}

/// Classes on X for the reference parameters (1, 2, 1, 1) over Q. The classes
/// do not depend on the parameters; tests check this on other tuples.
inline ClassMap configuration_classes() {
  const Field Q = Field::rationals();
  auto v = [&](long n) { return FieldValue::from_integer(Q, n); };
  return configuration_classes(ParameterSet::make(Q, v(1), v(2), v(1), v(1)));
}

struct FigureCheck {
  std::string surface;
  FigureTable computed;
  std::vector<std::string> diffs;
};

inline std::vector<FigureCheck> verify_figures(const ParameterSet& p) {
  const BlowUpData d = blowup_data(p);
  std::vector<FigureCheck> out;
  const std::pair<Surface, FigureTable> panels[] = {{Surface::plane(), golden::plane()},
                                                    {Surface::a_b_p(), golden::a_b_p()},
                                                    {Surface::x_prime(), golden::x_prime()},
                                                    {Surface::x_q(), golden::x_q()},
                                                    {Surface::x(), golden::x()}};
  for (auto& [s, want] : panels) {
    FigureTable got = figure_table(configuration_classes(d, s), s.name);
    auto diffs = compare_tables(got, want);
    if (s.name == "X") {
      const auto r = negative_part(got);
      long m2 = 0, m3 = 0;
      for (auto& n : r) (got.self[n] == -2 ? m2 : m3)++;
      if (r.size() != 9 || m2 != 8 || m3 != 1)
        diffs.push_back("X: R has " + std::to_string(r.size()) + " curves (" + std::to_string(m2) + " of -2, " +
                        std::to_string(m3) + " other)");
    }
    out.push_back({s.name, std::move(got), std::move(diffs)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Forms on Gamma~_i.

struct FormData {
  Parametrization par1, par2;
  Pullback pull1, pull2;  // Gamma2 o phi1, Gamma1 o phi2
  BinaryForm F1, F2;
  std::vector<P1Point> extra1, extra2;  // parameters of Gamma~_i meeting L~_ab on X
};

/// Parameters of the points of Gamma~ on L~_ab: the zeros of the z-component
/// after removing v (over b) and (u + mu v)^2 (over a, a1).
inline std::vector<P1Point> lab_points(const Parametrization& par, const FieldValue& mu) {
  const Field f = mu.field();
  const Poly u = Poly::variable(f, uv_vars(), 0), v = Poly::variable(f, uv_vars(), 1);
  auto q = divide_exact(par.components[2], v * (u + v.scaled(mu)).pow(2));
  if (!q) throw FactorizationMismatch("z-component lacks the factors over a and b");
  std::vector<P1Point> out;
  for (auto& [pt, m] : binary_roots(BinaryForm::from_poly(*q))) out.push_back(pt);
  return out;
}

inline FormData build_forms(const ParameterSet& p) {
  const PlaneCurve g1(gamma_equation(p.alpha, p.lambda, p.mu)), g2(gamma_equation(p.beta, p.lambda, p.mu));
  const Parametrization par1 = build_parametrization(p.alpha, p.lambda, p.mu);
  const Parametrization par2 = build_parametrization(p.beta, p.lambda, p.mu);
  if (!par1.lies_on(g1) || !par2.lies_on(g2)) throw FactorizationMismatch("parametrisation does not lie on its quartic");
  Pullback pl1 = pullback_form(par1, g2, p.alpha, p.beta, p.lambda, p.mu);
  Pullback pl2 = pullback_form(par2, g1, p.beta, p.alpha, p.lambda, p.mu);
  const BinaryForm F1 = attach_F(pl1.G), F2 = attach_F(pl2.G);
  return {par1, par2, pl1, pl2, F1, F2, lab_points(par1, p.mu), lab_points(par2, p.mu)};
}

// ---------------------------------------------------------------------------
// Verdicts.

struct DiagonalMap {
  FieldValue xi, theta;  // (x : y : z) -> (x : xi y : theta z)
  std::string to_string() const { return "(x:y:z) -> (x : " + xi.to_string() + "*y : " + theta.to_string() + "*z)"; }
};

namespace detail {

inline Poly apply_diagonal(const Poly& f, const FieldValue& xi, const FieldValue& theta) {
  Poly r(f.field(), f.vars());
  for (auto& [e, c] : f.terms()) r.add_term(e, c * xi.pow(e[1]) * theta.pow(e[2]));
  return r;
}

inline bool sends(const PlaneCurve& from, const PlaneCurve& to, const FieldValue& xi, const FieldValue& theta) {
  return PlaneCurve(apply_diagonal(from.equation(), xi, theta)) == to;
}

inline bool exchanges(const PlaneCurve& g1, const PlaneCurve& g2, const FieldValue& xi, const FieldValue& theta) {
  return sends(g1, g2, xi, theta) && sends(g2, g1, xi, theta);
}

/// Rational (xi, theta) with g1(x, xi y, theta z) proportional to g2: every
/// monomial pair gives xi^dy theta^dz = r; pairs of such relations
/// eliminate xi and leave a pure power of theta.
inline std::vector<std::pair<mpq_class, mpq_class>> diagonal_candidates_q(const Poly& g1, const Poly& g2) {
  std::vector<std::pair<mpq_class, mpq_class>> out;
  if (g1.size() != g2.size()) return out;
  for (auto& [e, c] : g1.terms())
    if (g2.coefficient(e).is_zero()) return out;
  struct Rel {
    long dy, dz;
    mpq_class r;
  };
  std::vector<Rel> rels;
  const auto& [e0, c0] = *g1.terms().begin();
  const mpq_class k0 = g2.coefficient(e0).rational() / c0.rational();  // times xi^-y0 theta^-z0
  for (auto& [e, c] : g1.terms()) {
    if (e == e0) continue;
    // c xi^ey theta^ez = k g2_e and c0 xi^y0 theta^z0 = k g2_e0
    const mpq_class r = (g2.coefficient(e).rational() / c.rational()) / k0;
    rels.push_back({static_cast<long>(e[1]) - static_cast<long>(e0[1]), static_cast<long>(e[2]) - static_cast<long>(e0[2]), r});
  }
  auto qpow = [](mpq_class b, long n) {
    if (n < 0) {
      b = 1 / b;
      n = -n;
    }
    mpq_class r = 1;
    for (long i = 0; i < n; ++i) r *= b;
    return r;
  };
  auto roots = [](const mpq_class& r, long e) -> std::vector<mpq_class> {
    if (e == 0) return {};
    if (e < 0) return rational_roots_of(1 / r, static_cast<unsigned>(-e));
    return rational_roots_of(r, static_cast<unsigned>(e));
  };
  // theta candidates
  std::optional<std::vector<mpq_class>> thetas;
  for (std::size_t i = 0; i < rels.size() && !thetas; ++i) {
    if (rels[i].dy == 0 && rels[i].dz != 0) thetas = roots(rels[i].r, rels[i].dz);
    for (std::size_t j = i + 1; j < rels.size() && !thetas; ++j) {
      const long e = rels[j].dy * rels[i].dz - rels[i].dy * rels[j].dz;
      if (e == 0 || (rels[i].dy == 0 && rels[j].dy == 0)) continue;
      thetas = roots(qpow(rels[i].r, rels[j].dy) / qpow(rels[j].r, rels[i].dy), e);
    }
  }
  if (!thetas) thetas = std::vector<mpq_class>{1};
  for (auto& th : *thetas) {
    if (th == 0) continue;
    std::optional<std::vector<mpq_class>> xis;
    for (auto& rel : rels)
      if (rel.dy != 0) {
        xis = roots(rel.r / qpow(th, rel.dz), rel.dy);
        break;
      }
    if (!xis) xis = std::vector<mpq_class>{1};
    for (auto& xi : *xis)
      if (xi != 0) out.emplace_back(xi, th);
  }
  return out;
}

}  // namespace detail

struct ProjectiveVerdict {
  bool closed_form = false;  // mu = 0 and alpha + beta = 0
  bool search_found = false;
  std::optional<DiagonalMap> witness;
  std::string method;
  std::uint64_t candidates_tried = 0;
  bool value() const { return closed_form; }
};

inline ProjectiveVerdict decide_projective_equivalence(const ParameterSet& p) {
  ProjectiveVerdict v;
  v.closed_form = p.mu.is_zero() && (p.alpha + p.beta).is_zero();
  const PlaneCurve g1(gamma_equation(p.alpha, p.lambda, p.mu)), g2(gamma_equation(p.beta, p.lambda, p.mu));
  const Field f = p.field;
  if (f->is_finite()) {
    v.method = "exhaustive diagonal search";
    for (auto& xi : enumerate(f)) {
      if (xi.is_zero()) continue;
      for (auto& th : enumerate(f)) {
        if (th.is_zero()) continue;
        ++v.candidates_tried;
        if (!v.witness && detail::exchanges(g1, g2, xi, th)) v.witness = DiagonalMap{xi, th};
      }
    }
  } else {
    v.method = "rational solve of monomial ratios";
    auto cands = detail::diagonal_candidates_q(g1.equation(), g2.equation());
    std::stable_partition(cands.begin(), cands.end(), [](const auto& c) { return c.first == 1; });
    for (auto& [xi, th] : cands) {
      ++v.candidates_tried;
      const FieldValue X = FieldValue::from_rational(f, xi), T = FieldValue::from_rational(f, th);
      if (detail::exchanges(g1, g2, X, T)) {
        v.witness = DiagonalMap{X, T};
        break;
      }
    }
  }
  v.search_found = v.witness.has_value();
  if (v.search_found != v.closed_form)
    throw CriterionMismatch("diagonal search (" + std::string(v.search_found ? "found" : "none") + ") disagrees with mu=0 and alpha+beta=0 (" +
                            (v.closed_form ? "true" : "false") + ") for " + p.to_string());
  return v;
}

inline EquivalenceResult decide_isomorphic(const FormData& forms) { return equivalent_fixing_point(forms.F1, forms.F2); }

inline EquivalenceResult decide_isomorphic(const ParameterSet& p) { return decide_isomorphic(build_forms(p)); }

// ---------------------------------------------------------------------------
// Intersection audit.

struct IntersectionAudit {
  unsigned ia_fulton = 0, ia_blowup = 0;  // I_a(Gamma1, Gamma2)
  unsigned ib_fulton = 0, ib_blowup = 0;  // I_b(Gamma1, Gamma2)
  unsigned a_chain = 0;                   // sum over a, a1 of m m'
  unsigned b_chain = 0;                   // sum over b, b1, b2, b3, q, r of m m'
  unsigned forms_degree = 0;              // deg F1
  unsigned f1_roots_over_a = 0, f1_roots_over_b = 0;
  long lattice_product = 0;               // Gamma~1 . Gamma~2 on X
  BezoutAudit bezout;
  std::vector<Check> checks;
};

inline unsigned root_multiplicity(const BinaryForm& F, const P1Point& pt) {
  for (auto& [q, m] : binary_roots(F))
    if (q == pt) return m;
  return 0;
}

inline IntersectionAudit intersection_audit(const ParameterSet& p, const FormData& forms, const ClassMap& classes) {
  const Field f = p.field;
  const PlaneCurve g1(gamma_equation(p.alpha, p.lambda, p.mu)), g2(gamma_equation(p.beta, p.lambda, p.mu));
  IntersectionAudit a{.bezout = bezout_audit(g1, g2), .checks = {}};
  a.ia_fulton = intersection_multiplicity(g1, g2, point_a(f));
  a.ia_blowup = intersection_multiplicity_by_blowup(g1, g2, point_a(f));
  a.ib_fulton = intersection_multiplicity(g1, g2, point_b(f));
  a.ib_blowup = intersection_multiplicity_by_blowup(g1, g2, point_b(f));
  {
    const auto o1 = strict_transform(g1, chart_a(f, 2)).orders(), o2 = strict_transform(g2, chart_a(f, 2)).orders();
    for (std::size_t i = 0; i < o1.size(); ++i) a.a_chain += o1[i] * o2[i];
  }
  {
    const auto o1 = strict_transform(g1, chart_b(p, 6)).orders(), o2 = strict_transform(g2, chart_b(p, 6)).orders();
    for (std::size_t i = 0; i < o1.size(); ++i) a.b_chain += o1[i] * o2[i];
  }
  a.forms_degree = forms.F1.degree();
  // Parameter (mu : -1) lies over a and (1 : 0) over b.
  a.f1_roots_over_a = root_multiplicity(forms.F1, P1Point::make(p.mu, -FieldValue::one(f)));
  a.f1_roots_over_b = root_multiplicity(forms.F1, P1Point::make(FieldValue::one(f), FieldValue::zero(f)));
  a.lattice_product = pair_l(class_of(classes, "Gamma1"), class_of(classes, "Gamma2"));

  auto s = [](unsigned x) { return std::to_string(x); };
  a.checks.push_back({"I_a by Fulton equals I_a by blow-ups", a.ia_fulton == a.ia_blowup, s(a.ia_fulton) + " / " + s(a.ia_blowup)});
  a.checks.push_back({"I_b by Fulton equals I_b by blow-ups", a.ib_fulton == a.ib_blowup, s(a.ib_fulton) + " / " + s(a.ib_blowup)});
  a.checks.push_back({"a, a1 contribute 2", a.a_chain == 2, s(a.a_chain)});
  a.checks.push_back({"b, b1, b2, b3, q, r contribute 6", a.b_chain == 6, s(a.b_chain)});
  a.checks.push_back({"deg F1 = Gamma~1.Gamma~2 = 8", a.forms_degree == 8 && a.lattice_product == 8,
                      s(a.forms_degree) + " / " + std::to_string(a.lattice_product)});
  a.checks.push_back({"2 + 6 + 8 = 16 = 4*4", a.a_chain + a.b_chain + a.forms_degree == 16, s(a.a_chain + a.b_chain + a.forms_degree)});
  a.checks.push_back({"I_a = 2 + roots of F1 over a", a.ia_fulton == a.a_chain + a.f1_roots_over_a,
                      s(a.ia_fulton) + " = " + s(a.a_chain) + " + " + s(a.f1_roots_over_a)});
  a.checks.push_back({"I_b = 6 + roots of F1 over b", a.ib_fulton == a.b_chain + a.f1_roots_over_b,
                      s(a.ib_fulton) + " = " + s(a.b_chain) + " + " + s(a.f1_roots_over_b)});
  a.checks.push_back({"Bezout audit by resultant", a.bezout.consistent,
                      "deg res = " + std::to_string(a.bezout.resultant.total_degree()) + ", rational part " + s(a.bezout.accounted) +
                          ", residual " + s(a.bezout.residual_degree)});
  return a;
}

// ---------------------------------------------------------------------------
// Full report.

struct ContractionReport {
  int i;
  ContractionTrace trace;
  DegreeResult degree;
  TowerCheck tower;
};

struct VerdictReport {
  ParameterSet params;
  GammaPair gammas;
  std::vector<Check> omega1, omega2;
  std::vector<FigureCheck> figures;
  ClassMap classes;
  std::vector<ContractionReport> contractions;
  IntersectionAudit audit;
  FormData forms;
  ProjectiveVerdict projective;
  EquivalenceResult isomorphism;
  IdentifiedPoints identified1, identified2;
  std::vector<Check> checks;  // summary of every check, in order
  std::vector<std::pair<std::string, double>> timings_ms;

  std::pair<long, long> degrees() const { return {contractions.at(0).degree.degree, contractions.at(1).degree.degree}; }
  bool isomorphic() const { return isomorphism.witness.has_value(); }
  bool projectively_equivalent() const { return projective.value(); }
  std::pair<bool, bool> type_I() const { return {identified1.type_I(), identified2.type_I()}; }
  bool all_passed() const { return pcx::all_passed(checks); }
};

/// Raised when a stage of the pipeline throws; names the stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), "stage '" + stage + "': " + cause.what()), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

inline VerdictReport full_report(const ParameterSet& p) {
  using clock = std::chrono::steady_clock;
  std::vector<std::pair<std::string, double>> timings;
  auto stage = [&](const std::string& name, auto&& fn) {
    const auto t0 = clock::now();
    try {
      auto r = fn();
      timings.emplace_back(name, std::chrono::duration<double, std::milli>(clock::now() - t0).count());
      return r;
    } catch (const StageError&) {
      throw;
    } catch (const Error& e) {
      throw StageError(name, e);
    }
  };

  GammaPair gammas = stage("build", [&] { return build_gammas(p); });
  auto omega1 = stage("omega", [&] { return verify_omega(p, 1); });
  auto omega2 = stage("omega", [&] { return verify_omega(p, 2); });
  auto figures = stage("figures", [&] { return verify_figures(p); });
  ClassMap classes = stage("figures", [&] { return configuration_classes(p); });
  std::vector<ContractionReport> contractions = stage("contractions", [&] {
    std::vector<ContractionReport> out;
    for (int i : {1, 2}) out.push_back({i, contract_sequence(classes, i), image_degree(classes, i), tower_resolution_check(classes, i)});
    return out;
  });
  FormData forms = stage("forms", [&] { return build_forms(p); });
  IntersectionAudit audit = stage("intersections", [&] { return intersection_audit(p, forms, classes); });
  ProjectiveVerdict projective = stage("projective", [&] { return decide_projective_equivalence(p); });
  EquivalenceResult iso = stage("isomorphism", [&] { return decide_isomorphic(forms); });
  IdentifiedPoints id1 = identified_points_divisor(forms.F1, forms.extra1);
  IdentifiedPoints id2 = identified_points_divisor(forms.F2, forms.extra2);

  VerdictReport r{p, gammas, omega1, omega2, figures, classes, contractions, audit, forms, projective, iso, id1, id2, {}, timings};
  auto& c = r.checks;
  for (int w : {1, 2}) {
    const GammaBuild& b = w == 1 ? gammas.g1 : gammas.g2;
    c.push_back({"Gamma" + std::to_string(w) + ": unique solution of the 14 conditions equals the closed form", b.matches(),
                 "kernel dimension " + std::to_string(b.kernel_dimension)});
    c.push_back({"Gamma" + std::to_string(w) + ": birational parametrisation (irreducible)", b.irreducibility.ok(), ""});
  }
  for (auto& x : omega1) c.push_back({"Gamma1: " + x.name, x.passed, x.detail});
  for (auto& x : omega2) c.push_back({"Gamma2: " + x.name, x.passed, x.detail});
  for (auto& fc : figures) {
    std::string d;
    for (auto& s : fc.diffs) d += (d.empty() ? "" : "; ") + s;
    c.push_back({"figure table on " + fc.surface, fc.diffs.empty(), d});
  }
  for (auto& cr : contractions) {
    const std::string n = "eta" + std::to_string(cr.i);
    c.push_back({n + ": 10 contractions of (-1)-curves", cr.trace.steps.size() == 10, ""});
    c.push_back({n + ": K^2 = 9 at the end", cr.trace.steps.back().k_squared_after == 9,
                 "K^2 = " + std::to_string(cr.trace.steps.back().k_squared_after)});
    c.push_back({n + ": image degree 39", cr.degree.degree == 39 && cr.degree.self_intersection == 39 * 39 && cr.degree.line_square == 1,
                 "degree " + std::to_string(cr.degree.degree) + ", self-intersection " + std::to_string(cr.degree.self_intersection)});
    c.push_back({n + ": (-1)-tower resolution", cr.tower.ok(), ""});
  }
  for (auto& x : audit.checks) c.push_back({"intersections: " + x.name, x.passed, x.detail});
  c.push_back({"F1(1,0) = 0", forms.F1.coeffs().back().is_zero(), ""});
  c.push_back({"projective equivalence: diagonal search agrees with mu=0 and alpha+beta=0", projective.search_found == projective.closed_form, ""});
  c.push_back({"projectively equivalent implies isomorphic", !r.projectively_equivalent() || r.isomorphic(), ""});
  if (!r.isomorphic() && !p.field->is_finite())
    c.push_back({"non-isomorphism certified at two good primes", iso.certifying_primes.size() >= 2,
                 std::to_string(iso.certifying_primes.size()) + " primes"});
  c.push_back({"not of type I (eta2(Gamma~1) and eta1(Gamma~2))", !id1.type_I() && !id2.type_I(), ""});
  return r;
}

}  // namespace pcx
