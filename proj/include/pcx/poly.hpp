#pragma once

// Sparse multivariate polynomials over an exact field, plus dense univariate
// helpers used by gcd, root finding and binary forms.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcx/exactfield.hpp"

namespace pcx {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

/// Graded-lexicographic order, largest first. Variables earlier in the name
/// list are heavier, so x^4 > x^3 y > ... > z^4 for (x, y, z).
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

class Poly {
 public:
  using Terms = std::map<Exponents, FieldValue, GradedLexGreater>;

  Poly(Field f, std::vector<std::string> vars) : field_(f), vars_(std::move(vars)) {}

  static Poly constant(Field f, std::vector<std::string> vars, const FieldValue& c) {
    Poly p(f, std::move(vars));
    p.add_term(Exponents(p.nvars(), 0), c);
    return p;
  }
  static Poly constant(Field f, std::vector<std::string> vars, long c) {
    return constant(f, std::move(vars), FieldValue::from_integer(f, c));
  }
  static Poly variable(Field f, std::vector<std::string> vars, std::size_t i) {
    Poly p(f, std::move(vars));
    Exponents e(p.nvars(), 0);
    e.at(i) = 1;
    p.add_term(e, FieldValue::one(f));
    return p;
  }
  static Poly monomial(Field f, std::vector<std::string> vars, Exponents e, const FieldValue& c) {
    Poly p(f, std::move(vars));
    p.add_term(std::move(e), c);
    return p;
  }

  Field field() const noexcept { return field_; }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  std::size_t var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw ParseError("unknown variable '" + std::string(name) + "'");
  }

  /// Adds c * monomial(e) in place, dropping zero results.
  void add_term(Exponents e, const FieldValue& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
      return;
    }
    FieldValue s = it->second + c;
    if (s.is_zero())
      terms_.erase(it);
    else
      it->second = s;
  }

  FieldValue coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? FieldValue::zero(field_) : it->second;
  }

  /// -1 for the zero polynomial.
  int total_degree() const {
    return terms_.empty() ? -1 : static_cast<int>(pcx::total_degree(terms_.begin()->first));
  }
  /// Lowest total degree of a term (the order at the origin); -1 for zero.
  int order() const {
    int m = -1;
    for (auto& [e, c] : terms_) {
      const int d = static_cast<int>(pcx::total_degree(e));
      if (m < 0 || d < m) m = d;
    }
    return m;
  }
  int degree_in(std::size_t i) const {
    int m = -1;
    for (auto& [e, c] : terms_) m = std::max(m, static_cast<int>(e[i]));
    return m;
  }
  /// Largest power of variable i dividing the polynomial (0 for zero input).
  unsigned valuation_in(std::size_t i) const {
    if (terms_.empty()) return 0;
    unsigned m = ~0u;
    for (auto& [e, c] : terms_) m = std::min(m, e[i]);
    return m;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = pcx::total_degree(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(), [d](auto& t) { return pcx::total_degree(t.first) == d; });
  }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree() == 0); }

  const Exponents& leading_monomial() const { return terms_.begin()->first; }
  const FieldValue& leading_coefficient() const { return terms_.begin()->second; }

  /// Scales so that the graded-lex leading coefficient is 1.
  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(leading_coefficient().inverse());
  }

  Poly scaled(const FieldValue& c) const {
    Poly r(field_, vars_);
    if (c.is_zero()) return r;
    for (auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
  }

  Poly operator-() const { return scaled(-FieldValue::one(field_)); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    check_compatible(a, b);
    Poly r = a;
    for (auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    check_compatible(a, b);
    Poly r = a;
    for (auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    check_compatible(a, b);
    Poly r(a.field_, a.vars_);
    Exponents e(a.nvars());
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend Poly operator*(const Poly& a, const FieldValue& c) { return a.scaled(c); }
  friend Poly operator*(const FieldValue& c, const Poly& a) { return a.scaled(c); }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned n) const {
    Poly r = constant(field_, vars_, 1), b = *this;
    while (n) {
      if (n & 1) r *= b;
      n >>= 1;
      if (n) b *= b;
    }
    return r;
  }

  FieldValue evaluate(std::span<const FieldValue> point) const {
    if (point.size() != nvars()) throw ParseError("evaluate: arity mismatch");
    FieldValue acc = FieldValue::zero(field_);
    for (auto& [e, c] : terms_) {
      FieldValue t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) t *= point[i].pow(e[i]);
      acc += t;
    }
    return acc;
  }

  /// Composition: variable i is replaced by images[i]. All images share a
  /// variable list, which becomes the variable list of the result.
  Poly substitute(std::span<const Poly> images) const {
    if (images.size() != nvars() || images.empty()) throw ParseError("substitute: arity mismatch");
    const Poly& ref = images.front();
    Poly r(field_, ref.vars());
    // Cache powers per variable.
    std::vector<std::vector<Poly>> powers(nvars());
    auto power = [&](std::size_t i, unsigned k) -> const Poly& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(field_, ref.vars(), 1));
      while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
      return cache[k];
    };
    for (auto& [e, c] : terms_) {
      Poly t = constant(field_, ref.vars(), c);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) t *= power(i, e[i]);
      r += t;
    }
    return r;
  }

  /// Sets variable i to a constant, keeping the variable list.
  Poly restrict(std::size_t i, const FieldValue& value) const {
    Poly r(field_, vars_);
    for (auto& [e, c] : terms_) {
      Exponents f = e;
      f[i] = 0;
      r.add_term(std::move(f), c * value.pow(e[i]));
    }
    return r;
  }

  /// Coefficients with respect to variable i: result[k] multiplies var_i^k.
  std::vector<Poly> coefficients_in(std::size_t i) const {
    std::vector<Poly> out;
    for (auto& [e, c] : terms_) {
      if (out.size() <= e[i]) out.resize(e[i] + 1, Poly(field_, vars_));
      Exponents f = e;
      f[i] = 0;
      out[e[i]].add_term(std::move(f), c);
    }
    return out;
  }

  /// Divides by var_i^k; every term must be divisible.
  Poly divide_by_power(std::size_t i, unsigned k) const {
    Poly r(field_, vars_);
    for (auto& [e, c] : terms_) {
      if (e[i] < k) throw FactorizationMismatch("divide_by_power: term not divisible");
      Exponents f = e;
      f[i] -= k;
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }

  /// Renames / reorders variables: the result lives in `vars`, and variable
  /// j of this polynomial maps to index map[j] of the new list.
  Poly remap(std::vector<std::string> vars, std::span<const std::size_t> map) const {
    Poly r(field_, std::move(vars));
    for (auto& [e, c] : terms_) {
      Exponents f(r.nvars(), 0);
      for (std::size_t j = 0; j < e.size(); ++j) f.at(map[j]) += e[j];
      r.add_term(std::move(f), c);
    }
    return r;
  }

  std::string to_string() const;

 private:
  static void check_compatible(const Poly& a, const Poly& b) {
    if (a.field_ != b.field_) throw DescriptorMismatch("polynomials over different fields");
    if (a.vars_ != b.vars_) throw ParseError("polynomials in different variables");
  }

  Field field_;
  std::vector<std::string> vars_;
  Terms terms_;
};

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("divide_exact by zero polynomial");
  Poly rem = a, quot(a.field(), a.vars());
  const Exponents& lb = b.leading_monomial();
  const FieldValue inv = b.leading_coefficient().inverse();
  while (!rem.is_zero()) {
    const Exponents& lr = rem.leading_monomial();
    Exponents q(lr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) {
      if (lr[i] < lb[i]) return std::nullopt;
      q[i] = lr[i] - lb[i];
    }
    Poly t = Poly::monomial(a.field(), a.vars(), q, rem.leading_coefficient() * inv);
    quot += t;
    rem -= t * b;
  }
  return quot;
}

namespace detail {

inline std::string coefficient_text(const FieldValue& c, bool bare_one) {
  std::string s = c.to_string();
  if (bare_one && c.is_one()) return "";
  // Multi-term finite-field elements and fractions need grouping.
  const bool compound = s.find('+') != std::string::npos || s.find('/') != std::string::npos;
  return compound ? "(" + s + ")" : s;
}

}  // namespace detail

/// Text form with explicit monomials and `^` powers, e.g. "x^2*y - 3/2*z^3".
inline std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c] : terms_) {
    FieldValue coeff = c;
    bool negative = false;
    if (!field_->is_finite() && sgn(c.rational()) < 0) {
      negative = true;
      coeff = -c;
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    const std::string ctext = detail::coefficient_text(coeff, !mono.empty());
    if (mono.empty())
      out += ctext;
    else if (ctext.empty())
      out += mono;
    else
      out += ctext + "*" + mono;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

namespace detail {

// Recursive-descent parser for + - * / ^ ( ) with integer literals. "/" is
// only allowed by a nonzero constant. The symbol "g" denotes the generator of
// an extension field unless it is one of the polynomial variables.
class PolyParser {
 public:
  PolyParser(Field f, std::vector<std::string> vars, std::string_view text)
      : field_(f), vars_(std::move(vars)), text_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  Poly expr() {
    skip_ws();
    Poly acc = term();
    for (;;) {
      skip_ws();
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }
  Poly term() {
    Poly acc = unary();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        acc = acc.scaled(d.leading_coefficient().inverse());
      } else {
        return acc;
      }
    }
  }
  Poly unary() {
    skip_ws();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  Poly power() {
    Poly base = atom();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }
  Poly atom() {
    skip_ws();
    if (accept('(')) {
      Poly p = expr();
      skip_ws();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class n(std::string(text_.substr(start, pos_ - start)));
      return Poly::constant(field_, vars_, FieldValue::from_integer(field_, n));
    }
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return Poly::variable(field_, vars_, i);
      if (name == "g") return Poly::constant(field_, vars_, FieldValue::generator(field_));
      fail("unknown symbol '" + name + "'");
    }
    fail("unexpected end of input");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  Field field_;
  std::vector<std::string> vars_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(Field f, std::vector<std::string> vars, std::string_view text) {
  return detail::PolyParser(f, std::move(vars), text).parse();
}

/// Parses an exact field element: "3", "-7/4" over Q, "g^2+1" over GF(p^k).
inline FieldValue parse_element(Field f, std::string_view text) {
  Poly p = parse_poly(f, {}, text);
  return p.is_zero() ? FieldValue::zero(f) : p.leading_coefficient();
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over a field.

class UPoly {
 public:
  explicit UPoly(Field f) : field_(f) {}
  UPoly(Field f, std::vector<FieldValue> coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

  static UPoly constant(const FieldValue& c) { return UPoly(c.field(), {c}); }
  static UPoly x(Field f) { return UPoly(f, {FieldValue::zero(f), FieldValue::one(f)}); }

  Field field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<FieldValue>& coeffs() const noexcept { return c_; }
  FieldValue coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FieldValue::zero(field_); }
  const FieldValue& lc() const { return c_.back(); }
  /// Multiplicity of the root 0.
  unsigned valuation() const {
    unsigned v = 0;
    while (v < c_.size() && c_[v].is_zero()) ++v;
    return v;
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    return scaled(lc().inverse());
  }
  UPoly scaled(const FieldValue& s) const {
    std::vector<FieldValue> r;
    r.reserve(c_.size());
    for (auto& c : c_) r.push_back(c * s);
    return UPoly(field_, std::move(r));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<FieldValue> r;
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < n; ++i) r.push_back(a.coeff(i) + b.coeff(i));
    return UPoly(a.field_, std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<FieldValue> r;
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < n; ++i) r.push_back(a.coeff(i) - b.coeff(i));
    return UPoly(a.field_, std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
    std::vector<FieldValue> r(a.c_.size() + b.c_.size() - 1, FieldValue::zero(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(a.field_, std::move(r));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly shifted(unsigned k) const {
    if (is_zero()) return *this;
    std::vector<FieldValue> r(k, FieldValue::zero(field_));
    r.insert(r.end(), c_.begin(), c_.end());
    return UPoly(field_, std::move(r));
  }

  FieldValue evaluate(const FieldValue& x) const {
    FieldValue acc = FieldValue::zero(field_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Polynomial composition this(inner).
  UPoly compose(const UPoly& inner) const {
    UPoly acc(field_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

  /// (quotient, remainder) of Euclidean division.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DivisionByZero("univariate division by zero");
    std::vector<FieldValue> rem = a.c_;
    const int db = b.degree();
    if (a.degree() < db) return {UPoly(a.field_), a};
    std::vector<FieldValue> q(static_cast<std::size_t>(a.degree() - db + 1), FieldValue::zero(a.field_));
    const FieldValue inv = b.lc().inverse();
    for (int i = a.degree(); i >= db; --i) {
      const FieldValue c = rem[static_cast<std::size_t>(i)] * inv;
      q[static_cast<std::size_t>(i - db)] = c;
      if (c.is_zero()) continue;
      for (int j = 0; j <= db; ++j)
        rem[static_cast<std::size_t>(i - db + j)] -= c * b.c_[static_cast<std::size_t>(j)];
    }
    return {UPoly(a.field_, std::move(q)), UPoly(a.field_, std::move(rem))};
  }

  /// Monic gcd (zero when both inputs are zero).
  friend UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Field field_;
  std::vector<FieldValue> c_;
};

/// Roots in the base field with multiplicity. Over Q uses the rational root
/// theorem on the integer-cleared polynomial; over finite fields enumerates.
std::vector<std::pair<FieldValue, unsigned>> base_field_roots(const UPoly& f);

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, unsigned>> factors;
  for (mpz_class d = 2; d * d <= n; ++d) {
    if (d > 10000000) {
      // Remaining cofactor must be prime for the enumeration to be exact.
      if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
        throw Error("RootSearch", "integer too large to factor by trial division");
      break;
    }
    unsigned k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k) factors.emplace_back(d, k);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<mpz_class> divs{1};
  for (auto& [p, k] : factors) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned i = 1; i <= k; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

}  // namespace detail

inline std::vector<std::pair<FieldValue, unsigned>> base_field_roots(const UPoly& f0) {
  std::vector<std::pair<FieldValue, unsigned>> out;
  if (f0.is_zero()) return out;
  const Field F = f0.field();
  UPoly f = f0;
  auto take = [&](const FieldValue& r) {
    const UPoly lin(F, {-r, FieldValue::one(F)});
    unsigned m = 0;
    for (;;) {
      auto [q, rem] = divmod(f, lin);
      if (!rem.is_zero()) break;
      f = q;
      ++m;
    }
    if (m) out.emplace_back(r, m);
  };
  if (F->is_finite()) {
    for (std::uint32_t i = 0; i < F->order() && f.degree() > 0; ++i) {
      const FieldValue r = FieldValue::from_index(F, i);
      if (f.evaluate(r).is_zero()) take(r);
    }
    return out;
  }
  take(FieldValue::zero(F));
  if (f.degree() <= 0) return out;
  mpz_class den = 1;
  for (auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den().get_mpz_t());
  std::vector<mpz_class> ints;
  for (auto& c : f.coeffs()) ints.push_back(mpz_class(c.rational() * den));
  const auto ps = detail::positive_divisors(ints.front());
  const auto qs = detail::positive_divisors(ints.back());
  for (auto& q : qs)
    for (auto& p : ps)
      for (int s : {1, -1}) {
        if (f.degree() <= 0) return out;
        mpq_class cand(s * p, q);
        cand.canonicalize();
        if (cand.get_den() != q) continue;  // visited in lowest terms elsewhere
        const FieldValue r = FieldValue::from_rational(F, cand);
        if (f.evaluate(r).is_zero()) take(r);
      }
  return out;
}

}  // namespace pcx
