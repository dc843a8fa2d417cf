#pragma once

// Plane projective curves and points, local multiplicities, and the local
// intersection number computed by Fulton's reduction algorithm.

#include <array>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcx/linalg.hpp"
#include "pcx/poly.hpp"

namespace pcx {

inline const std::vector<std::string>& plane_vars() {
  static const std::vector<std::string> v{"x", "y", "z"};
  return v;
}
inline const std::vector<std::string>& local_vars() {
  static const std::vector<std::string> v{"s", "t"};
  return v;
}

/// A point of P^2, normalised so that its first nonzero coordinate is 1.
class ProjPoint {
 public:
  ProjPoint(FieldValue x, FieldValue y, FieldValue z) : c_{std::move(x), std::move(y), std::move(z)} {
    std::size_t i = 0;
    while (i < 3 && c_[i].is_zero()) ++i;
    if (i == 3) throw DegenerateParameters("(0:0:0) is not a projective point");
    const FieldValue inv = c_[i].inverse();
    for (auto& v : c_) v *= inv;
  }
  static ProjPoint of(Field f, long x, long y, long z) {
    return ProjPoint(FieldValue::from_integer(f, x), FieldValue::from_integer(f, y), FieldValue::from_integer(f, z));
  }

  const std::array<FieldValue, 3>& coords() const noexcept { return c_; }
  const FieldValue& operator[](std::size_t i) const { return c_[i]; }
  Field field() const { return c_[0].field(); }
  /// Index of the first nonzero coordinate (which equals 1).
  std::size_t chart() const {
    std::size_t i = 0;
    while (c_[i].is_zero()) ++i;
    return i;
  }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    return "(" + c_[0].to_string() + ":" + c_[1].to_string() + ":" + c_[2].to_string() + ")";
  }

 private:
  std::array<FieldValue, 3> c_;
};

/// A plane curve: a nonzero homogeneous form in (x, y, z) up to scalar,
/// stored with graded-lex leading coefficient 1 so that equality up to
/// scalar is plain equality.
class PlaneCurve {
 public:
  explicit PlaneCurve(const Poly& equation) : eq_(equation.monic()) {
    if (eq_.vars() != plane_vars()) throw ParseError("plane curves use variables x, y, z");
    if (eq_.is_zero()) throw DegenerateParameters("zero polynomial is not a curve");
    if (!eq_.is_homogeneous()) throw ParseError("curve equation is not homogeneous");
  }
  static PlaneCurve parse(Field f, std::string_view text) { return PlaneCurve(parse_poly(f, plane_vars(), text)); }

  const Poly& equation() const noexcept { return eq_; }
  unsigned degree() const { return static_cast<unsigned>(eq_.total_degree()); }
  Field field() const { return eq_.field(); }

  friend bool operator==(const PlaneCurve& a, const PlaneCurve& b) { return a.eq_ == b.eq_; }
  std::string to_string() const { return eq_.to_string(); }

 private:
  Poly eq_;
};

inline FieldValue evaluate(const PlaneCurve& c, const ProjPoint& p) {
  return c.equation().evaluate(p.coords());
}

/// Equation of `c` in the affine chart of `p` (first nonzero coordinate set
/// to 1), translated so that p is the origin of (s, t).
inline Poly local_equation(const Poly& form, const ProjPoint& p) {
  const Field f = form.field();
  const std::size_t i = p.chart();
  std::array<Poly, 3> img{Poly(f, local_vars()), Poly(f, local_vars()), Poly(f, local_vars())};
  std::size_t next = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j == i) {
      img[j] = Poly::constant(f, local_vars(), 1);
    } else {
      img[j] = Poly::variable(f, local_vars(), next++) + Poly::constant(f, local_vars(), p[j]);
    }
  }
  return form.substitute(img);
}

/// Multiplicity of the curve at p; 0 iff p is not on the curve.
inline unsigned multiplicity_at(const PlaneCurve& c, const ProjPoint& p) {
  return static_cast<unsigned>(local_equation(c.equation(), p).order());
}

// ---------------------------------------------------------------------------
// Bivariate gcd in K[s][t] by primitive pseudo-remainder sequences.

namespace detail {

using BiPoly = std::vector<UPoly>;  // coefficient k multiplies t^k; entries in K[s]

inline BiPoly to_bi(const Poly& p) {
  BiPoly out;
  for (auto& [e, c] : p.terms()) {
    if (out.size() <= e[1]) out.resize(e[1] + 1, UPoly(p.field()));
    std::vector<FieldValue> mono(e[0] + 1, FieldValue::zero(p.field()));
    mono[e[0]] = c;
    out[e[1]] = out[e[1]] + UPoly(p.field(), std::move(mono));
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

inline Poly from_bi(const BiPoly& b, Field f, const std::vector<std::string>& vars) {
  Poly p(f, vars);
  for (std::size_t k = 0; k < b.size(); ++k)
    for (std::size_t i = 0; i < b[k].coeffs().size(); ++i) p.add_term({static_cast<unsigned>(i), static_cast<unsigned>(k)}, b[k].coeffs()[i]);
  return p;
}

inline UPoly content(const BiPoly& b, Field f) {
  UPoly g(f);
  for (auto& c : b) g = gcd(g, c);
  return g;
}

inline BiPoly primitive_part(const BiPoly& b, const UPoly& cont) {
  BiPoly out;
  for (auto& c : b) out.push_back(divmod(c, cont).first);
  return out;
}

inline BiPoly pseudo_remainder(BiPoly a, const BiPoly& b) {
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.size() >= b.size()) {
    const UPoly la = a.back(), lb = b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = a[shift + i] - la * b[i];
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  return a;
}

}  // namespace detail

/// gcd of two polynomials in two variables, up to a unit.
inline Poly gcd2(const Poly& f, const Poly& g) {
  const Field F = f.field();
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  detail::BiPoly a = detail::to_bi(f), b = detail::to_bi(g);
  const UPoly ca = detail::content(a, F), cb = detail::content(b, F);
  const UPoly c = gcd(ca, cb);
  a = detail::primitive_part(a, ca);
  b = detail::primitive_part(b, cb);
  if (a.size() < b.size()) std::swap(a, b);
  while (b.size() > 1) {
    detail::BiPoly r = detail::pseudo_remainder(a, b);
    a = std::move(b);
    if (r.empty()) {
      b.clear();
      break;
    }
    b = detail::primitive_part(r, detail::content(r, F));
  }
  detail::BiPoly h;
  if (b.empty())
    h = a;  // b divided a exactly
  else
    h = {UPoly::constant(FieldValue::one(F))};
  // h is primitive up to a constant; recombine with the content gcd.
  for (auto& coef : h) coef = coef * c;
  return detail::from_bi(h, F, f.vars()).monic();
}

// ---------------------------------------------------------------------------
// Fulton's algorithm.

namespace detail {

inline UPoly restrict_to_first_axis(const Poly& p) {
  std::vector<FieldValue> c;
  for (auto& [e, v] : p.terms()) {
    if (e[1] != 0) continue;
    if (c.size() <= e[0]) c.resize(e[0] + 1, FieldValue::zero(p.field()));
    c[e[0]] = v;
  }
  return UPoly(p.field(), std::move(c));
}

inline bool vanishes_at_origin(const Poly& p) {
  return p.coefficient(Exponents(p.nvars(), 0)).is_zero();
}

}  // namespace detail

/// Local intersection number at the origin of two bivariate polynomials
/// without a common factor through the origin. Uses I(F,G) = I(F, G + A F),
/// I(t H, G) = I(t, G) + I(H, G), and I(t, G) = ord_s G(s, 0).
inline unsigned fulton_local(Poly F, Poly G) {
  unsigned total = 0;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > 100000) throw InfiniteMultiplicity("Fulton reduction did not terminate");
    if (!detail::vanishes_at_origin(F) || !detail::vanishes_at_origin(G)) return total;
    UPoly r = detail::restrict_to_first_axis(F), s = detail::restrict_to_first_axis(G);
    if (r.is_zero() && s.is_zero()) throw CommonComponent("both curves contain the axis t = 0");
    if (r.is_zero()) {
      total += s.valuation();
      F = F.divide_by_power(1, 1);
      continue;
    }
    if (s.is_zero()) {
      std::swap(F, G);
      continue;
    }
    if (r.degree() > s.degree()) {
      std::swap(F, G);
      std::swap(r, s);
    }
    Exponents shift{static_cast<unsigned>(s.degree() - r.degree()), 0};
    G -= Poly::monomial(F.field(), F.vars(), shift, s.lc() / r.lc()) * F;
  }
}

/// Removes from F and G their common factor when it is a unit at the
/// origin; throws CommonComponent when it passes through the origin.
inline std::pair<Poly, Poly> strip_common_unit(const Poly& F, const Poly& G) {
  const Poly g = gcd2(F, G);
  if (g.total_degree() <= 0) return {F, G};
  if (detail::vanishes_at_origin(g)) throw CommonComponent("common component " + g.to_string() + " through the point");
  return {*divide_exact(F, g), *divide_exact(G, g)};
}

inline unsigned intersection_multiplicity(const PlaneCurve& c, const PlaneCurve& d, const ProjPoint& p) {
  Poly F = local_equation(c.equation(), p), G = local_equation(d.equation(), p);
  if (!detail::vanishes_at_origin(F) || !detail::vanishes_at_origin(G)) return 0;
  auto [F2, G2] = strip_common_unit(F, G);
  return fulton_local(std::move(F2), std::move(G2));
}

// ---------------------------------------------------------------------------
// Sylvester resultant.

/// Determinant of a square matrix with polynomial entries (Bareiss).
inline Poly poly_determinant(std::vector<std::vector<Poly>> m, const Poly& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  Poly prev = one;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return Poly(one.field(), one.vars());
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw FactorizationMismatch("Bareiss step not exact");
        m[i][j] = std::move(*q);
      }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// res_var(f, g) via the Sylvester determinant; the result no longer
/// involves `var` but keeps the same variable list.
inline Poly resultant(const Poly& f, const Poly& g, std::size_t var) {
  const auto fc = f.coefficients_in(var), gc = g.coefficients_in(var);
  const std::size_t m = fc.size() - 1, n = gc.size() - 1;
  if (f.is_zero() || g.is_zero() || m == 0 || n == 0)
    throw DegenerateParameters("resultant needs positive degree in the eliminated variable");
  const Poly zero(f.field(), f.vars());
  std::vector<std::vector<Poly>> syl(m + n, std::vector<Poly>(m + n, zero));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) syl[r][r + k] = fc[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) syl[n + r][r + k] = gc[n - k];
  return poly_determinant(std::move(syl), Poly::constant(f.field(), f.vars(), 1));
}


// ---------------------------------------------------------------------------
// Bezout audit.

/// Intersection of two curves accounted for by projecting from a point off
/// both curves. For a projection centre on neither curve the order of the
/// resultant at a root equals the sum of the local intersection numbers on
/// the corresponding line, so every base-field root can be checked against
/// Fulton's algorithm; the remaining degree belongs to non-rational lines.
struct BezoutAudit {
  struct Point {
    ProjPoint point;
    unsigned local;
  };
  struct Line {
    ProjPoint direction;  // root (x0 : z0) in the moved coordinates, as (x0 : 0 : z0)
    unsigned resultant_order;
    unsigned local_sum;
  };
  ProjPoint centre;  // projection centre in the original coordinates
  Poly resultant;    // binary form in (x, z) after the coordinate change
  std::vector<Point> points;
  std::vector<Line> lines;
  unsigned accounted = 0;       // degree of the base-field-rational part
  unsigned residual_degree = 0; // degree of the rest of the resultant
  unsigned expected = 0;        // deg C * deg D
  bool consistent = false;
};

namespace detail {

inline std::vector<ProjPoint> centre_candidates(Field f) {
  std::vector<ProjPoint> out;
  if (f->is_finite()) {
    const auto all = enumerate(f);
    for (auto& a : all)
      for (auto& c : all) out.emplace_back(a, FieldValue::one(f), c);
    return out;
  }
  for (long r = 0; r <= 6; ++r)
    for (long a = -r; a <= r; ++a)
      for (long c = -r; c <= r; ++c)
        if (std::max(std::labs(a), std::labs(c)) == r) out.push_back(ProjPoint::of(f, a, 1, c));
  return out;
}

/// Dehomogenised coefficients of a binary form in (x, z) at z = 1.
inline UPoly binary_at_z1(const Poly& form) {
  std::vector<FieldValue> c;
  for (auto& [e, v] : form.terms()) {
    if (c.size() <= e[0]) c.resize(e[0] + 1, FieldValue::zero(form.field()));
    c[e[0]] += v;
  }
  return UPoly(form.field(), std::move(c));
}

inline UPoly restrict_to_line(const Poly& form, const FieldValue& x0, const FieldValue& z0) {
  std::vector<FieldValue> c;
  for (auto& [e, v] : form.terms()) {
    if (c.size() <= e[1]) c.resize(e[1] + 1, FieldValue::zero(form.field()));
    c[e[1]] += v * x0.pow(e[0]) * z0.pow(e[2]);
  }
  return UPoly(form.field(), std::move(c));
}

}  // namespace detail

namespace detail {

inline BezoutAudit bezout_audit_from(const PlaneCurve& C, const PlaneCurve& D, const ProjPoint& centre) {
  const Field f = C.field();
  const FieldValue c1 = centre[0], c2 = centre[2];
  // Moved coordinates: original = (x + c1 y, y, z + c2 y), centre -> (0:1:0).
  const Poly X = Poly::variable(f, plane_vars(), 0), Y = Poly::variable(f, plane_vars(), 1),
             Z = Poly::variable(f, plane_vars(), 2);
  const std::array<Poly, 3> move{X + Y.scaled(c1), Y, Z + Y.scaled(c2)};
  const Poly Cm = C.equation().substitute(move), Dm = D.equation().substitute(move);

  BezoutAudit out{centre, resultant(Cm, Dm, 1), {}, {}, 0, 0, C.degree() * D.degree(), false};
  const unsigned total = static_cast<unsigned>(out.resultant.total_degree());

  std::vector<std::pair<ProjPoint, unsigned>> roots;
  const UPoly r1 = detail::binary_at_z1(out.resultant);
  if (total > static_cast<unsigned>(r1.degree()))
    roots.emplace_back(ProjPoint::of(f, 1, 0, 0), total - static_cast<unsigned>(r1.degree()));
  for (auto& [x0, m] : base_field_roots(r1)) roots.emplace_back(ProjPoint(x0, FieldValue::zero(f), FieldValue::one(f)), m);

  bool ok = true;
  for (auto& [dir, m] : roots) {
    const UPoly common = gcd(detail::restrict_to_line(Cm, dir[0], dir[2]), detail::restrict_to_line(Dm, dir[0], dir[2]));
    unsigned sum = 0, found = 0;
    for (auto& [y0, k] : base_field_roots(common)) {
      const ProjPoint pt(dir[0] + c1 * y0, y0, dir[2] + c2 * y0);
      const unsigned local = intersection_multiplicity(C, D, pt);
      out.points.push_back({pt, local});
      sum += local;
      found += k;
    }
    // Common points on this line that are not defined over the base field
    // cannot be checked locally.
    if (found != static_cast<unsigned>(common.degree()) || sum != m) ok = false;
    out.lines.push_back({dir, m, sum});
    out.accounted += m;
  }
  out.residual_degree = total - out.accounted;
  out.consistent = ok && total == out.expected;
  return out;
}

}  // namespace detail

/// Tries projection centres off both curves until every base-field line
/// through the centre is fully accounted for by rational intersection points.
/// Over small fields a centre can see a conjugate pair of common points on a
/// rational line; such centres are skipped.
inline BezoutAudit bezout_audit(const PlaneCurve& C, const PlaneCurve& D) {
  std::optional<BezoutAudit> last;
  for (auto& cand : detail::centre_candidates(C.field())) {
    if (evaluate(C, cand).is_zero() || evaluate(D, cand).is_zero()) continue;
    last = detail::bezout_audit_from(C, D, cand);
    if (last->consistent) return *last;
  }
  if (!last) throw DegenerateParameters("no projection centre off both curves over the base field");
  return *last;
}

}  // namespace pcx
