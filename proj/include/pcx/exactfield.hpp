#pragma once

/// Exact arithmetic over Q, GF(p) and GF(p^k).
///
/// A `Field` is a cheap handle onto an interned, immutable descriptor, so two
/// handles describe the same field iff they compare equal. Finite-field
/// elements are encoded as the integer sum c_i p^i of their coefficients in the
/// polynomial basis 1, g, g^2, ... where g is the class of x modulo the
/// defining polynomial. Rationals are GMP `mpq_class` values kept canonical.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pcx/error.hpp"

namespace pcx {

enum class FieldKind { rationals, prime_field, extension_field };

/// Fields larger than this are rejected; exhaustive searches assume it.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

namespace detail {

inline bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over GF(p), coefficients low -> high, no trailing zeros.
using ModPoly = std::vector<std::uint32_t>;

inline void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline ModPoly mod_poly_rem(ModPoly f, const ModPoly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t inv = pow_mod(g.back(), p - 2, p);
  while (f.size() >= g.size()) {
    const std::uint64_t c = std::uint64_t{f.back()} * inv % p;
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t sub = c * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

inline ModPoly mod_poly_mul(const ModPoly& a, const ModPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  trim(r);
  return r;
}

// Exhaustive trial division by every monic polynomial of degree 1..k/2.
inline bool is_irreducible(const ModPoly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      ModPoly g(d + 1, 0);
      std::uint64_t m = n;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(m % p);
        m /= p;
      }
      g[d] = 1;
      if (mod_poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Immutable description of a supported base field. Constructed only through
/// `Field`, which interns descriptors.
class FieldDescriptor {
 public:
  FieldKind kind() const noexcept { return kind_; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const noexcept { return p_; }
  /// Extension degree k; 1 for prime fields and 0 for Q.
  unsigned degree() const noexcept { return k_; }
  /// Monic defining polynomial, low -> high (size k+1). Empty for Q.
  const detail::ModPoly& modulus() const noexcept { return modulus_; }
  /// Number of elements; 0 for Q.
  std::uint32_t order() const noexcept { return q_; }
  bool is_finite() const noexcept { return kind_ != FieldKind::rationals; }

  std::string to_string() const {
    switch (kind_) {
      case FieldKind::rationals:
        return "q";
      case FieldKind::prime_field:
        return "gf(" + std::to_string(p_) + ")";
      case FieldKind::extension_field: {
        std::string s = "gf(" + std::to_string(p_) + "^" + std::to_string(k_) + ");modulus=";
        for (std::size_t i = 0; i < modulus_.size(); ++i) {
          if (i) s += ',';
          s += std::to_string(modulus_[i]);
        }
        return s;
      }
    }
    return {};
  }

  // Encoded finite-field arithmetic. Arguments are valid encodings (< q).
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    if (kind_ == FieldKind::prime_field) return static_cast<std::uint32_t>((std::uint64_t{a} + b) % p_);
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }
  std::uint32_t neg(std::uint32_t a) const noexcept {
    if (kind_ == FieldKind::prime_field) return a == 0 ? 0 : p_ - a;
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      const std::uint32_t d = a % p_;
      r += (d == 0 ? 0 : p_ - d) * scale;
      a /= p_;
      scale *= p_;
    }
    return r;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    if (kind_ == FieldKind::prime_field) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in " + to_string());
    if (kind_ == FieldKind::prime_field) return detail::pow_mod(a, p_ - 2, p_);
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  /// Image of an integer under Z -> GF(p) -> GF(p^k).
  std::uint32_t from_integer(const mpz_class& n) const {
    mpz_class r = n % p_;
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r.get_ui());
  }
  /// Encoding of the generator g = x mod modulus (requires k >= 2).
  std::uint32_t generator() const noexcept { return p_; }

 private:
  friend class Field;
  FieldDescriptor() = default;

  void build_tables() {
    // Find a primitive element by trying encodings in increasing order.
    const std::uint32_t n = q_ - 1;
    std::vector<std::uint32_t> exp(n);
    for (std::uint32_t cand = 2; cand < q_; ++cand) {
      detail::ModPoly g = decode(cand);
      detail::ModPoly cur{1};
      bool ok = true;
      for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t e = encode(cur);
        if (i > 0 && e == 1) {
          ok = false;
          break;
        }
        exp[i] = e;
        cur = detail::mod_poly_rem(detail::mod_poly_mul(cur, g, p_), modulus_, p_);
      }
      if (ok && encode(cur) == 1) {
        exp_ = std::move(exp);
        log_.assign(q_, 0);
        for (std::uint32_t i = 0; i < n; ++i) log_[exp_[i]] = i;
        return;
      }
    }
    throw InvalidField("no primitive element found in " + to_string());
  }

  detail::ModPoly decode(std::uint32_t a) const {
    detail::ModPoly f(k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
      f[i] = a % p_;
      a /= p_;
    }
    detail::trim(f);
    return f;
  }
  std::uint32_t encode(const detail::ModPoly& f) const {
    std::uint32_t r = 0, scale = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      r += f[i] * scale;
      scale *= p_;
    }
    return r;
  }

  FieldKind kind_ = FieldKind::rationals;
  std::uint32_t p_ = 0;
  unsigned k_ = 0;
  std::uint32_t q_ = 0;
  detail::ModPoly modulus_;
  std::vector<std::uint32_t> exp_, log_;
};

/// Handle onto an interned `FieldDescriptor`. Copying is free and equality is
/// identity of the underlying descriptor.
class Field {
 public:
  static Field rationals() { return intern("q", [] { return FieldDescriptor{}; }); }

  static Field prime_field(std::uint32_t p) {
    if (!detail::is_prime(p)) throw InvalidField(std::to_string(p) + " is not prime");
    if (p > (1u << 16)) throw InvalidField("characteristic above 2^16 unsupported");
    return intern("gf(" + std::to_string(p) + ")", [p] {
      FieldDescriptor d;
      d.kind_ = FieldKind::prime_field;
      d.p_ = p;
      d.k_ = 1;
      d.q_ = p;
      d.modulus_ = {0, 1};
      return d;
    });
  }

  /// GF(p^k). When `modulus` is empty the smallest irreducible monic
  /// polynomial is chosen, ordering candidates by the encoding of their
  /// non-leading coefficients (so x^2+1 precedes x^2+x+2 over GF(3)).
  static Field extension_field(std::uint32_t p, unsigned k, detail::ModPoly modulus = {}) {
    if (k == 1 && modulus.empty()) return prime_field(p);
    if (!detail::is_prime(p)) throw InvalidField(std::to_string(p) + " is not prime");
    if (k < 1 || k > 4) throw InvalidField("extension degree must be in 1..4");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    if (q > kMaxFieldOrder) throw InvalidField("field order above 2^20 unsupported");
    if (modulus.empty()) {
      for (std::uint64_t n = 0; n < q; ++n) {
        detail::ModPoly f(k + 1, 0);
        std::uint64_t m = n;
        for (unsigned i = 0; i < k; ++i) {
          f[i] = static_cast<std::uint32_t>(m % p);
          m /= p;
        }
        f[k] = 1;
        if (detail::is_irreducible(f, p)) {
          modulus = std::move(f);
          break;
        }
      }
    }
    if (modulus.size() != k + 1) throw InvalidField("modulus must have degree k");
    for (auto& c : modulus)
      if (c >= p) throw InvalidField("modulus coefficient out of range");
    if (modulus.back() != 1) throw InvalidField("modulus must be monic");
    if (!detail::is_irreducible(modulus, p)) throw InvalidField("modulus is reducible over GF(p)");
    if (k == 1) {
      // A degree-one modulus gives the prime field itself.
      return prime_field(p);
    }
    std::string key = "gf(" + std::to_string(p) + "^" + std::to_string(k) + ")";
    for (auto c : modulus) key += "," + std::to_string(c);
    return intern(key, [&] {
      FieldDescriptor d;
      d.kind_ = FieldKind::extension_field;
      d.p_ = p;
      d.k_ = k;
      d.q_ = static_cast<std::uint32_t>(q);
      d.modulus_ = modulus;
      d.build_tables();
      return d;
    });
  }

  /// Parses "q", "gf(p)", "gf(p^k)", optionally followed by
  /// ";modulus=c0,c1,...,ck" (coefficients low -> high, monic).
  static Field parse(std::string_view spec) {
    std::string s;
    for (char c : spec)
      if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
    if (s == "q" || s == "qq" || s == "rationals") return rationals();
    std::string head = s, tail;
    if (auto semi = s.find(';'); semi != std::string::npos) {
      head = s.substr(0, semi);
      tail = s.substr(semi + 1);
    }
    if (head.size() < 5 || head.rfind("gf(", 0) != 0 || head.back() != ')')
      throw ParseError("unrecognised field '" + std::string(spec) + "'");
    const std::string inner = head.substr(3, head.size() - 4);
    std::uint32_t p = 0;
    unsigned k = 1;
    try {
      if (auto caret = inner.find('^'); caret != std::string::npos) {
        p = static_cast<std::uint32_t>(std::stoul(inner.substr(0, caret)));
        k = static_cast<unsigned>(std::stoul(inner.substr(caret + 1)));
      } else {
        p = static_cast<std::uint32_t>(std::stoul(inner));
      }
    } catch (const std::exception&) {
      throw ParseError("unrecognised field '" + std::string(spec) + "'");
    }
    detail::ModPoly modulus;
    if (!tail.empty()) {
      if (tail.rfind("modulus=", 0) != 0) throw ParseError("expected ';modulus=' in field spec");
      std::stringstream ss(tail.substr(8));
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          modulus.push_back(static_cast<std::uint32_t>(std::stoul(item)));
        } catch (const std::exception&) {
          throw ParseError("bad modulus coefficient '" + item + "'");
        }
      }
    }
    if (k == 1 && !detail::is_prime(p)) {
      // "gf(q)" with q a prime power is accepted as a shorthand for gf(p^k).
      std::uint32_t r = 2;
      while (r <= p && p % r) ++r;
      std::uint32_t m = p;
      unsigned e = 0;
      while (r > 1 && m % r == 0) {
        m /= r;
        ++e;
      }
      if (m != 1 || p < 2) throw InvalidField(std::to_string(p) + " is not a prime power");
      p = r;
      k = e;
    }
    if (k == 1 && modulus.empty()) return prime_field(p);
    return extension_field(p, k, std::move(modulus));
  }

  const FieldDescriptor& operator*() const noexcept { return *d_; }
  const FieldDescriptor* operator->() const noexcept { return d_; }

  friend bool operator==(Field a, Field b) noexcept { return a.d_ == b.d_; }
  friend bool operator!=(Field a, Field b) noexcept { return a.d_ != b.d_; }

 private:
  explicit Field(const FieldDescriptor* d) : d_(d) {}

  template <class Make>
  static Field intern(const std::string& key, Make&& make) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<FieldDescriptor>> table;
    std::lock_guard lock(mu);
    auto it = table.find(key);
    if (it == table.end())
      it = table.emplace(key, std::make_unique<FieldDescriptor>(make())).first;
    return Field(it->second.get());
  }

  const FieldDescriptor* d_;
};

inline unsigned characteristic(Field f) { return f->characteristic(); }

/// An element of a `Field`. Immutable value with structural equality.
class FieldValue {
 public:
  static FieldValue zero(Field f) { return from_integer(f, 0); }
  static FieldValue one(Field f) { return from_integer(f, 1); }

  static FieldValue from_integer(Field f, const mpz_class& n) {
    if (!f->is_finite()) return FieldValue(f, mpq_class(n));
    return FieldValue(f, f->from_integer(n));
  }
  static FieldValue from_integer(Field f, long n) { return from_integer(f, mpz_class(n)); }
  static FieldValue from_integer(Field f, int n) { return from_integer(f, mpz_class(n)); }

  /// Image of a rational number; throws when the denominator vanishes in f.
  static FieldValue from_rational(Field f, const mpq_class& q) {
    if (!f->is_finite()) {
      mpq_class c = q;
      c.canonicalize();
      return FieldValue(f, std::move(c));
    }
    const std::uint32_t den = f->from_integer(q.get_den());
    if (den == 0) throw DivisionByZero("denominator of " + q.get_str() + " vanishes in " + f->to_string());
    return FieldValue(f, f->mul(f->from_integer(q.get_num()), f->inv(den)));
  }

  /// Finite-field element with the given encoding (see file comment).
  static FieldValue from_index(Field f, std::uint32_t index) {
    if (!f->is_finite()) throw InfiniteField("from_index on Q");
    if (index >= f->order()) throw InvalidField("element index out of range");
    return FieldValue(f, index);
  }

  /// The generator g of an extension field.
  static FieldValue generator(Field f) {
    if (f->kind() != FieldKind::extension_field) throw InvalidField("generator g needs an extension field");
    return FieldValue(f, f->generator());
  }

  Field field() const noexcept { return field_; }
  bool is_zero() const noexcept {
    if (auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
    return std::get<std::uint32_t>(value_) == 0;
  }
  bool is_one() const noexcept {
    if (auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
    return std::get<std::uint32_t>(value_) == 1;
  }

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint32_t index() const { return std::get<std::uint32_t>(value_); }

  FieldValue operator-() const {
    if (auto* q = std::get_if<mpq_class>(&value_)) return FieldValue(field_, mpq_class(-*q));
    return FieldValue(field_, field_->neg(index()));
  }

  friend FieldValue operator+(const FieldValue& a, const FieldValue& b) {
    check_same(a, b);
    if (auto* q = std::get_if<mpq_class>(&a.value_)) return FieldValue(a.field_, mpq_class(*q + b.rational()));
    return FieldValue(a.field_, a.field_->add(a.index(), b.index()));
  }
  friend FieldValue operator-(const FieldValue& a, const FieldValue& b) {
    check_same(a, b);
    if (auto* q = std::get_if<mpq_class>(&a.value_)) return FieldValue(a.field_, mpq_class(*q - b.rational()));
    return FieldValue(a.field_, a.field_->add(a.index(), a.field_->neg(b.index())));
  }
  friend FieldValue operator*(const FieldValue& a, const FieldValue& b) {
    check_same(a, b);
    if (auto* q = std::get_if<mpq_class>(&a.value_)) return FieldValue(a.field_, mpq_class(*q * b.rational()));
    return FieldValue(a.field_, a.field_->mul(a.index(), b.index()));
  }
  friend FieldValue operator/(const FieldValue& a, const FieldValue& b) {
    check_same(a, b);
    return a * b.inverse();
  }
  FieldValue& operator+=(const FieldValue& o) { return *this = *this + o; }
  FieldValue& operator-=(const FieldValue& o) { return *this = *this - o; }
  FieldValue& operator*=(const FieldValue& o) { return *this = *this * o; }
  FieldValue& operator/=(const FieldValue& o) { return *this = *this / o; }

  FieldValue inverse() const {
    if (is_zero()) throw DivisionByZero("division by zero in " + field_->to_string());
    if (auto* q = std::get_if<mpq_class>(&value_)) return FieldValue(field_, mpq_class(1 / *q));
    return FieldValue(field_, field_->inv(index()));
  }

  FieldValue pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldValue r = one(field_), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const FieldValue& a, const FieldValue& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }
  friend bool operator!=(const FieldValue& a, const FieldValue& b) { return !(a == b); }

  /// Exact text: "n" or "n/d" over Q, an integer over GF(p), and a
  /// polynomial in g (highest power first) over GF(p^k).
  std::string to_string() const {
    if (auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
    std::uint32_t a = index();
    if (field_->kind() == FieldKind::prime_field) return std::to_string(a);
    const std::uint32_t p = field_->characteristic();
    std::vector<std::uint32_t> digits;
    for (unsigned i = 0; i < field_->degree(); ++i) {
      digits.push_back(a % p);
      a /= p;
    }
    std::string s;
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
      const std::uint32_t c = digits[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!s.empty()) s += '+';
      if (i == 0) {
        s += std::to_string(c);
        continue;
      }
      if (c != 1) s += std::to_string(c) + "*";
      s += "g";
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

  /// Total order used only for canonical containers; not a field order.
  friend bool canonical_less(const FieldValue& a, const FieldValue& b) {
    if (auto* q = std::get_if<mpq_class>(&a.value_)) return *q < b.rational();
    return a.index() < b.index();
  }

 private:
  FieldValue(Field f, mpq_class q) : field_(f), value_(std::move(q)) {}
  FieldValue(Field f, std::uint32_t i) : field_(f), value_(i) {}

  static void check_same(const FieldValue& a, const FieldValue& b) {
    if (a.field_ != b.field_)
      throw DescriptorMismatch(a.field_->to_string() + " vs " + b.field_->to_string());
  }

  Field field_;
  std::variant<mpq_class, std::uint32_t> value_;
};

inline std::ostream& operator<<(std::ostream& os, const FieldValue& v) { return os << v.to_string(); }

/// Every element of a finite field, in encoding order.
inline std::vector<FieldValue> enumerate(Field f) {
  if (!f->is_finite()) throw InfiniteField("cannot enumerate Q");
  std::vector<FieldValue> out;
  out.reserve(f->order());
  for (std::uint32_t i = 0; i < f->order(); ++i) out.push_back(FieldValue::from_index(f, i));
  return out;
}

}  // namespace pcx
