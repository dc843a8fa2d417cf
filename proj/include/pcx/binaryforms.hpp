#pragma once

// Binary forms on P^1 with coordinates (u : v), the parametrisations of the
// two quartics, and equivalence of forms under the stabiliser of (0:1).

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pcx/curves.hpp"

namespace pcx {

inline const std::vector<std::string>& uv_vars() {
  static const std::vector<std::string> v{"u", "v"};
  return v;
}

/// A point of P^1, normalised so that its last nonzero coordinate is 1.
struct P1Point {
  FieldValue u, v;

  static P1Point make(FieldValue u, FieldValue v) {
    if (!v.is_zero()) return {u / v, FieldValue::one(v.field())};
    if (u.is_zero()) throw DegenerateParameters("(0:0) is not a point of P^1");
    return {FieldValue::one(u.field()), FieldValue::zero(u.field())};
  }
  friend bool operator==(const P1Point&, const P1Point&) = default;
  std::string to_string() const { return "(" + u.to_string() + ":" + v.to_string() + ")"; }
};

/// Homogeneous form of degree d; coefficient i multiplies u^i v^(d-i).
/// Stored up to scalar with the first nonzero coefficient equal to 1.
class BinaryForm {
 public:
  BinaryForm(Field f, std::vector<FieldValue> coeffs) : field_(f), c_(std::move(coeffs)) {
    std::size_t i = 0;
    while (i < c_.size() && c_[i].is_zero()) ++i;
    if (i == c_.size()) throw DegenerateParameters("zero binary form");
    const FieldValue inv = c_[i].inverse();
    for (auto& x : c_) x *= inv;
  }

  static BinaryForm from_poly(const Poly& p) {
    if (p.vars() != uv_vars() || !p.is_homogeneous() || p.is_zero()) throw ParseError("binary forms are homogeneous in (u, v)");
    const unsigned d = static_cast<unsigned>(p.total_degree());
    std::vector<FieldValue> c(d + 1, FieldValue::zero(p.field()));
    for (auto& [e, v] : p.terms()) c[e[0]] = v;
    return BinaryForm(p.field(), std::move(c));
  }

  Field field() const noexcept { return field_; }
  unsigned degree() const noexcept { return static_cast<unsigned>(c_.size() - 1); }
  const std::vector<FieldValue>& coeffs() const noexcept { return c_; }
  const FieldValue& operator[](std::size_t i) const { return c_.at(i); }

  Poly to_poly() const {
    Poly p(field_, uv_vars());
    for (unsigned i = 0; i < c_.size(); ++i) p.add_term({i, degree() - i}, c_[i]);
    return p;
  }
  FieldValue evaluate(const FieldValue& u, const FieldValue& v) const {
    return to_poly().evaluate(std::array<FieldValue, 2>{u, v});
  }

  /// Coefficients of F(a u, c u + d v), unnormalised.
  std::vector<FieldValue> transformed(const FieldValue& a, const FieldValue& c, const FieldValue& d) const {
    const unsigned n = degree();
    // powers of (a u) and of (c u + d v) as coefficient vectors in u
    std::vector<std::vector<FieldValue>> lin(n + 1);
    lin[0] = {FieldValue::one(field_)};
    for (unsigned k = 1; k <= n; ++k) {
      lin[k].assign(k + 1, FieldValue::zero(field_));
      for (unsigned j = 0; j < k; ++j) {
        lin[k][j] += lin[k - 1][j] * d;
        lin[k][j + 1] += lin[k - 1][j] * c;
      }
    }
    std::vector<FieldValue> out(n + 1, FieldValue::zero(field_));
    FieldValue ai = FieldValue::one(field_);
    for (unsigned i = 0; i <= n; ++i) {
      if (!c_[i].is_zero()) {
        const FieldValue s = c_[i] * ai;
        for (unsigned j = 0; j <= n - i; ++j) out[i + j] += s * lin[n - i][j];
      }
      ai *= a;
    }
    return out;
  }

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.c_ == b.c_; }

  std::string to_string() const { return to_poly().to_string(); }

 private:
  Field field_;
  std::vector<FieldValue> c_;
};

/// True when `coeffs` is a nonzero multiple of `g`.
inline bool proportional(const std::vector<FieldValue>& coeffs, const BinaryForm& g) {
  if (coeffs.size() != g.coeffs().size()) return false;
  std::size_t i = 0;
  while (i < coeffs.size() && g[i].is_zero()) ++i;
  if (coeffs[i].is_zero()) return false;
  const FieldValue k = coeffs[i];  // g[i] == 1
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != k * g[j]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parametrisations.

struct Parametrization {
  std::array<Poly, 3> components;  // homogeneous in (u, v), equal degree

  ProjPoint image(const FieldValue& u, const FieldValue& v) const {
    const std::array<FieldValue, 2> pt{u, v};
    return ProjPoint(components[0].evaluate(pt), components[1].evaluate(pt), components[2].evaluate(pt));
  }
  Poly pullback(const PlaneCurve& c) const { return c.equation().substitute(components); }
  bool lies_on(const PlaneCurve& c) const { return pullback(c).is_zero(); }
  std::string to_string() const {
    return "(" + components[0].to_string() + " : " + components[1].to_string() + " : " + components[2].to_string() + ")";
  }
};

/// (u:v) -> (v^4 l^5 t : (u + m v)(t (u + m v)^2 u - l^4 v^3) : v (u + m v)^2 l u t)
/// for the quartic with triple point at (t:0:1).
inline Parametrization build_parametrization(const FieldValue& theta, const FieldValue& lambda, const FieldValue& mu) {
  if (theta.is_zero() || lambda.is_zero()) throw DegenerateParameters("parametrisation needs theta, lambda nonzero");
  const Field f = theta.field();
  const Poly u = Poly::variable(f, uv_vars(), 0), v = Poly::variable(f, uv_vars(), 1);
  const Poly w = u + v.scaled(mu);
  return {{v.pow(4).scaled(lambda.pow(5) * theta), w * (w.pow(2) * u).scaled(theta) - w * v.pow(3).scaled(lambda.pow(4)),
           (v * w.pow(2) * u).scaled(lambda * theta)}};
}

/// Whether the parametrisation is birational onto a quartic, certified by
/// coprime components and a degree-one projection from (theta:0:1).
struct BirationalityCertificate {
  bool on_curve = false;
  bool coprime = false;
  bool projection_degree_one = false;
  bool ok() const { return on_curve && coprime && projection_degree_one; }
};

inline BirationalityCertificate certify_birational(const Parametrization& par, const PlaneCurve& target, const FieldValue& theta) {
  BirationalityCertificate c;
  c.on_curve = par.lies_on(target);
  const Poly g = gcd2(gcd2(par.components[0], par.components[1]), par.components[2]);
  c.coprime = g.total_degree() == 0;
  // y / (x - theta z) restricted to the curve.
  const Poly num = par.components[1], den = par.components[0] - par.components[2].scaled(theta);
  if (!num.is_zero() && !den.is_zero()) {
    const Poly h = gcd2(num, den);
    const Poly n1 = *divide_exact(num, h), d1 = *divide_exact(den, h);
    c.projection_degree_one = n1.total_degree() == 1 && d1.total_degree() == 1;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Pullback of the other quartic.

struct Pullback {
  Poly full;          // D o phi, degree 16
  FieldValue scalar;  // l^8 t1 (t1 - t2)
  Poly quotient;      // G with full = scalar (u + m v)^2 v^7 G
  BinaryForm G;
};

inline Pullback pullback_form(const Parametrization& par, const PlaneCurve& other, const FieldValue& theta1,
                              const FieldValue& theta2, const FieldValue& lambda, const FieldValue& mu) {
  const Field f = theta1.field();
  const FieldValue scalar = lambda.pow(8) * theta1 * (theta1 - theta2);
  if (scalar.is_zero()) throw DegenerateParameters("l^8 t1 (t1 - t2) vanishes");
  const Poly full = par.pullback(other);
  if (full.is_zero()) throw FactorizationMismatch("the parametrisation lies on the other curve");
  const Poly u = Poly::variable(f, uv_vars(), 0), v = Poly::variable(f, uv_vars(), 1);
  const Poly fixed = (u + v.scaled(mu)).pow(2) * v.pow(7);
  auto q = divide_exact(full, fixed.scaled(scalar));
  if (!q) throw FactorizationMismatch("pullback is not divisible by (u + mu v)^2 v^7");
  if (q->total_degree() != 7 || !q->is_homogeneous()) throw FactorizationMismatch("residual form does not have degree 7");
  return {full, scalar, *q, BinaryForm::from_poly(*q)};
}

/// F = v G.
inline BinaryForm attach_F(const BinaryForm& g) {
  std::vector<FieldValue> c = g.coeffs();
  c.push_back(FieldValue::zero(g.field()));  // u^i v^(d-i) -> u^i v^(d+1-i): same index, new top coefficient 0
  return BinaryForm(g.field(), std::move(c));
}

// ---------------------------------------------------------------------------
// Equivalence under (u:v) -> (a u : c u + d v).

struct StabilizerMap {
  FieldValue a, c, d;
  std::string to_string() const { return "(" + a.to_string() + ", " + c.to_string() + ", " + d.to_string() + ")"; }
  /// Inverse map: (a^-1, -c a^-1 d^-1, d^-1).
  StabilizerMap inverse() const { return {a.inverse(), -(c * a.inverse() * d.inverse()), d.inverse()}; }
};

inline bool is_witness(const BinaryForm& F, const BinaryForm& G, const StabilizerMap& m) {
  if (m.a.is_zero() || m.d.is_zero()) return false;
  return proportional(F.transformed(m.a, m.c, m.d), G);
}

struct EquivalenceResult {
  std::optional<StabilizerMap> witness;
  std::string method;                  // "identity", "exhaustive", "exact-solver"
  std::string elimination_failure;     // why the exact solver found nothing
  std::uint64_t maps_searched = 0;     // exhaustive search size
  std::vector<std::uint32_t> certifying_primes;
};

namespace detail {

/// All x in Q with x^e = r.
inline std::vector<mpq_class> rational_roots_of(const mpq_class& r, unsigned e) {
  if (e == 0) return {};
  if (r == 0) return {mpq_class(0)};
  if (e % 2 == 0 && r < 0) return {};
  mpz_class num = abs(r.get_num()), den = r.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), e) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), e)) return {};
  mpq_class x(rn, rd);
  x.canonicalize();
  if (r < 0) x = -x;
  if (e % 2 == 0) return {x, -x};
  return {x};
}

/// w-polynomial f(w) = F(1, w): coefficient of w^k is F_{d-k}.
inline std::vector<mpq_class> affine_w(const BinaryForm& F) {
  const unsigned d = F.degree();
  std::vector<mpq_class> w(d + 1);
  for (unsigned k = 0; k <= d; ++k) w[k] = F[d - k].rational();
  while (w.size() > 1 && w.back() == 0) w.pop_back();
  return w;
}

/// Taylor shift f(w + s).
inline std::vector<mpq_class> shift_poly(const std::vector<mpq_class>& f, const mpq_class& s) {
  std::vector<mpq_class> out(f.size(), 0);
  // Horner on polynomials
  for (std::size_t i = f.size(); i-- > 0;) {
    for (std::size_t k = out.size() - 1; k > 0; --k) out[k] = out[k] * s + out[k - 1];
    out[0] = out[0] * s + f[i];
  }
  return out;
}

struct Depressed {
  std::vector<mpq_class> poly;  // f(w + shift), no w^(n-1) term
  mpq_class shift;
};

inline Depressed depress(const std::vector<mpq_class>& f) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return {f, 0};
  const mpq_class s = -f[n - 1] / (mpq_class(static_cast<long>(n)) * f[n]);
  return {shift_poly(f, s), s};
}

}  // namespace detail

/// Exact solver over Q. Stabiliser maps act on w = v/u as w -> A w + B with
/// A = d/a, B = c/a; after removing the w^(n-1) terms B is forced and A is a
/// common rational root of A^(n-j) = r_j.
inline EquivalenceResult equivalent_over_q(const BinaryForm& F, const BinaryForm& G) {
  EquivalenceResult res;
  res.method = "exact-solver";
  const Field Q = F.field();
  const auto f = detail::affine_w(F), g = detail::affine_w(G);
  if (f.size() != g.size()) {
    res.elimination_failure = "different multiplicity at (0:1): deg_w " + std::to_string(f.size() - 1) + " vs " + std::to_string(g.size() - 1);
    return res;
  }
  const std::size_t n = f.size() - 1;
  const auto df = detail::depress(f), dg = detail::depress(g);
  std::vector<mpq_class> cands;
  bool constrained = false;
  for (std::size_t j = 0; j + 1 < n + 1 && n > 0; ++j) {
    if (j == n - 1) continue;
    const bool zf = df.poly[j] == 0, zg = dg.poly[j] == 0;
    if (zf != zg) {
      res.elimination_failure = "support mismatch at w^" + std::to_string(j) + " after depression";
      return res;
    }
    if (zf) continue;
    const mpq_class r = (df.poly[j] * dg.poly[n]) / (df.poly[n] * dg.poly[j]);
    const unsigned e = static_cast<unsigned>(n - j);
    // ĝ_j / ĝ_n = (f̂_j / f̂_n) A^(j - n)  =>  A^(n-j) = r
    if (!constrained) {
      cands = detail::rational_roots_of(r, e);
      constrained = true;
    } else {
      std::vector<mpq_class> keep;
      for (auto& A : cands) {
        mpq_class p = 1;
        for (unsigned k = 0; k < e; ++k) p *= A;
        if (p == r) keep.push_back(A);
      }
      cands = std::move(keep);
    }
    if (cands.empty()) {
      res.elimination_failure = "no rational A with A^" + std::to_string(e) + " = " + r.get_str() + " (from w^" + std::to_string(j) + ")";
      return res;
    }
  }
  if (!constrained) cands = {mpq_class(1)};
  for (auto& A : cands) {
    if (A == 0) continue;
    const mpq_class B = df.shift - A * dg.shift;
    StabilizerMap m{FieldValue::one(Q), FieldValue::from_rational(Q, B), FieldValue::from_rational(Q, A)};
    if (is_witness(F, G, m)) {
      res.witness = m;
      return res;
    }
  }
  res.elimination_failure = "candidate maps fail the full coefficient check";
  return res;
}

/// Exhaustive search over all (a, c, d) with a d != 0.
inline EquivalenceResult equivalent_exhaustive(const BinaryForm& F, const BinaryForm& G) {
  EquivalenceResult res;
  res.method = "exhaustive";
  const auto all = enumerate(F.field());
  for (auto& a : all) {
    if (a.is_zero()) continue;
    for (auto& c : all)
      for (auto& d : all) {
        if (d.is_zero()) continue;
        ++res.maps_searched;
        if (!res.witness && proportional(F.transformed(a, c, d), G)) res.witness = StabilizerMap{a, c, d};
      }
  }
  return res;
}

namespace detail {

inline bool p_unit(const mpq_class& x, std::uint32_t p) {
  return x != 0 && mpz_divisible_ui_p(x.get_num().get_mpz_t(), p) == 0 && mpz_divisible_ui_p(x.get_den().get_mpz_t(), p) == 0;
}
inline bool p_integral(const mpq_class& x, std::uint32_t p) {
  return mpz_divisible_ui_p(x.get_den().get_mpz_t(), p) == 0;
}

inline BinaryForm reduce_mod(const BinaryForm& F, Field gfp) {
  std::vector<FieldValue> c;
  for (auto& x : F.coeffs()) c.push_back(FieldValue::from_rational(gfp, x.rational()));
  return BinaryForm(gfp, std::move(c));
}

}  // namespace detail

/// A prime is good for (F, G) when reduction preserves everything an exact
/// witness over Q depends on: coefficients are p-integral, p does not divide
/// deg_w, and every nonzero coefficient of the depressed w-polynomials
/// (including the leading ones) stays a p-unit.
inline bool is_good_prime(const BinaryForm& F, const BinaryForm& G, std::uint32_t p) {
  const auto f = detail::affine_w(F), g = detail::affine_w(G);
  if (f.size() != g.size()) return false;
  const std::size_t n = f.size() - 1;
  if (n > 0 && n % p == 0) return false;
  for (auto* form : {&F, &G})
    for (auto& x : form->coeffs())
      if (!detail::p_integral(x.rational(), p)) return false;
  for (auto* w : {&f, &g}) {
    const auto d = detail::depress(*w);
    if (!detail::p_integral(d.shift, p)) return false;
    for (auto& x : d.poly)
      if (x != 0 && !detail::p_unit(x, p)) return false;
  }
  return true;
}

/// Finds `count` good primes at which exhaustive search shows the reductions
/// are not equivalent. Primes where the reductions happen to be equivalent
/// are skipped.
inline std::vector<std::uint32_t> modular_nonequivalence(const BinaryForm& F, const BinaryForm& G, std::size_t count = 2,
                                                         std::uint32_t max_prime = 60) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 3; p <= max_prime && out.size() < count; p += 2) {
    if (!detail::is_prime(p) || !is_good_prime(F, G, p)) continue;
    const Field gf = Field::prime_field(p);
    if (!equivalent_exhaustive(detail::reduce_mod(F, gf), detail::reduce_mod(G, gf)).witness) out.push_back(p);
  }
  return out;
}

/// Equivalence of forms of equal degree under the stabiliser of (0:1).
inline EquivalenceResult equivalent_fixing_point(const BinaryForm& F, const BinaryForm& G) {
  if (F.field() != G.field()) throw DescriptorMismatch("forms over different fields");
  if (F.degree() != G.degree()) throw DegenerateParameters("forms of different degrees");
  const Field f = F.field();
  if (F == G) {
    EquivalenceResult r;
    r.method = "identity";
    r.witness = StabilizerMap{FieldValue::one(f), FieldValue::zero(f), FieldValue::one(f)};
    return r;
  }
  if (f->is_finite()) return equivalent_exhaustive(F, G);
  EquivalenceResult r = equivalent_over_q(F, G);
  if (!r.witness) r.certifying_primes = modular_nonequivalence(F, G);
  return r;
}

// ---------------------------------------------------------------------------
// Identified points.

struct IdentifiedPoints {
  std::vector<std::pair<P1Point, unsigned>> roots;  // base-field roots of F with multiplicity
  unsigned residual_degree = 0;                     // degree of the part without base-field roots
  std::vector<P1Point> extra;
  std::vector<P1Point> support;                     // distinct points among roots and extra
  bool type_I() const { return support.size() < 2; }
};

/// Base-field roots of a binary form, with multiplicity.
inline std::vector<std::pair<P1Point, unsigned>> binary_roots(const BinaryForm& F) {
  const Field f = F.field();
  std::vector<std::pair<P1Point, unsigned>> out;
  const unsigned d = F.degree();
  // (1:0) is a root of multiplicity d - (largest i with F_i != 0).
  unsigned top = d;
  while (F[top].is_zero()) --top;
  if (top < d) out.emplace_back(P1Point{FieldValue::one(f), FieldValue::zero(f)}, d - top);
  const UPoly fu(f, F.coeffs());  // F(u, 1)
  for (auto& [r, m] : base_field_roots(fu)) out.emplace_back(P1Point{r, FieldValue::one(f)}, m);
  return out;
}

inline IdentifiedPoints identified_points_divisor(const BinaryForm& F, const std::vector<P1Point>& extra) {
  IdentifiedPoints out;
  out.roots = binary_roots(F);
  unsigned found = 0;
  for (auto& [p, m] : out.roots) {
    found += m;
    out.support.push_back(p);
  }
  out.residual_degree = F.degree() - found;
  out.extra = extra;
  for (auto& e : extra)
    if (std::find(out.support.begin(), out.support.end(), e) == out.support.end()) out.support.push_back(e);
  return out;
}

}  // namespace pcx
