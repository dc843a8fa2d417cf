#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "pcx/binaryforms.hpp"

using namespace pcx;
using fixtures::quartic;

namespace {

const Field Q = Field::rationals();

FieldValue q(long n, long d = 1) { return FieldValue::from_rational(Q, mpq_class(n, d)); }

BinaryForm form(Field f, std::initializer_list<long> c) {
  std::vector<FieldValue> v;
  for (long x : c) v.push_back(FieldValue::from_integer(f, x));
  return BinaryForm(f, v);
}

// c_i multiplies u^(7-i) v^i.
std::array<FieldValue, 8> c_table(const FieldValue& a, const FieldValue& b, const FieldValue& l, const FieldValue& m) {
  const Field f = a.field();
  auto n = [&](long k) { return FieldValue::from_integer(f, k); };
  const FieldValue l4 = l.pow(4), m3 = m.pow(3), ab = a * b;
  return {n(3) * a.pow(2) * b.pow(2),
          n(13) * a.pow(2) * b.pow(2) * m,
          n(22) * a.pow(2) * b.pow(2) * m.pow(2),
          -(n(3) * ab * (l4 * (a + b) - n(6) * ab * m3)),
          -(ab * m * (n(8) * l4 * b - n(7) * ab * m3 + n(6) * l4 * a)),
          -(ab * m.pow(2) * (n(3) * l4 * a - ab * m3 + n(7) * l4 * b)),
          l4 * (l4 * (ab + a.pow(2) + b.pow(2)) - n(2) * a * b.pow(2) * m3),
          l.pow(8) * b.pow(2) * m};
}

// l^8 a (a - b) (u + m v)^2 v^7 sum c_i u^(7-i) v^i
Poly expected_pullback(const FieldValue& a, const FieldValue& b, const FieldValue& l, const FieldValue& m) {
  const Field f = a.field();
  const Poly u = Poly::variable(f, uv_vars(), 0), v = Poly::variable(f, uv_vars(), 1);
  const auto c = c_table(a, b, l, m);
  Poly s(f, uv_vars());
  for (unsigned i = 0; i < 8; ++i) s.add_term({7 - i, i}, c[i]);
  return ((u + v.scaled(m)).pow(2) * v.pow(7) * s).scaled(l.pow(8) * a * (a - b));
}

}  // namespace

TEST(BinaryForm, NormalisationAndTransform) {
  const BinaryForm F = form(Q, {2, 4, 6});
  EXPECT_EQ(F[0], q(1));
  EXPECT_EQ(F[2], q(3));
  EXPECT_EQ(F.to_string(), "3*u^2 + 2*u*v + v^2");
  EXPECT_THROW(form(Q, {0, 0}), DegenerateParameters);
  // F(2u, u + 3v) with F = v^2 + 2uv + 3u^2
  const auto t = F.transformed(q(2), q(1), q(3));
  const Poly u = Poly::variable(Q, uv_vars(), 0), v = Poly::variable(Q, uv_vars(), 1);
  const Poly direct = F.to_poly().substitute(std::array<Poly, 2>{u.scaled(q(2)), u + v.scaled(q(3))});
  for (unsigned i = 0; i < 3; ++i) EXPECT_EQ(t[i], direct.coefficient({i, 2 - i}));
}

TEST(Parametrization, LiesOnItsQuarticAndIsBirational) {
  for (Field f : {Q, Field::prime_field(7), Field::extension_field(2, 2)}) {
    std::mt19937_64 rng(5 + f->order());
    for (int trial = 0; trial < 5; ++trial) {
      const FieldValue th = fixtures::nonzero_value(f, rng), l = fixtures::nonzero_value(f, rng), m = fixtures::small_value(f, rng);
      const PlaneCurve g = quartic(f, th.to_string(), l.to_string(), m.to_string());
      const Parametrization par = build_parametrization(th, l, m);
      EXPECT_TRUE(par.lies_on(g));
      EXPECT_TRUE(certify_birational(par, g, th).ok()) << f->to_string() << " theta=" << th.to_string();
      const FieldValue one = FieldValue::one(f), zero = FieldValue::zero(f);
      EXPECT_EQ(par.image(one, zero), ProjPoint::of(f, 0, 1, 0));
      EXPECT_EQ(par.image(m, -one), ProjPoint::of(f, 1, 0, 0));
    }
  }
}

TEST(Parametrization, CertificateRejectsWrongCurve) {
  const Parametrization par = build_parametrization(q(1), q(1), q(1));
  EXPECT_FALSE(certify_birational(par, quartic(Q, "2", "1", "1"), q(1)).ok());
}

TEST(Pullback, MatchesCoefficientTable) {
  for (Field f : {Q, Field::prime_field(11), Field::extension_field(3, 2)}) {
    std::mt19937_64 rng(99 + f->order());
    int done = 0;
    while (done < 5) {
      const FieldValue a = fixtures::nonzero_value(f, rng), b = fixtures::nonzero_value(f, rng);
      const FieldValue l = fixtures::nonzero_value(f, rng), m = fixtures::small_value(f, rng);
      if (a == b) continue;
      const Parametrization par = build_parametrization(a, l, m);
      const PlaneCurve g2 = quartic(f, b.to_string(), l.to_string(), m.to_string());
      const Poly full = par.pullback(g2);
      EXPECT_EQ(full, expected_pullback(a, b, l, m)) << f->to_string();
      const Pullback pb = pullback_form(par, g2, a, b, l, m);
      const auto c = c_table(a, b, l, m);
      std::vector<FieldValue> g(8, FieldValue::zero(f));
      for (unsigned i = 0; i < 8; ++i) g[7 - i] = c[i];
      EXPECT_EQ(pb.G, BinaryForm(f, g));
      ++done;
    }
  }
}

TEST(Pullback, ReferenceFormsAtOneTwoOneOne) {
  // Frozen from the direct substitution above at (alpha, beta, lambda, mu) = (1, 2, 1, 1).
  const Parametrization p1 = build_parametrization(q(1), q(1), q(1)), p2 = build_parametrization(q(2), q(1), q(1));
  const PlaneCurve g1 = quartic(Q, "1", "1", "1"), g2 = quartic(Q, "2", "1", "1");
  const BinaryForm F1 = attach_F(pullback_form(p1, g2, q(1), q(2), q(1), q(1)).G);
  const BinaryForm F2 = attach_F(pullback_form(p2, g1, q(2), q(1), q(1), q(1)).G);
  EXPECT_EQ(F1, form(Q, {4, -1, -30, -16, 54, 88, 52, 12, 0}));
  EXPECT_EQ(F2, form(Q, {1, 3, -22, -12, 54, 88, 52, 12, 0}));
  EXPECT_EQ(F1.degree(), 8u);
  EXPECT_TRUE(F1.evaluate(q(1), q(0)).is_zero());
}

TEST(Pullback, SymmetricWhenMuVanishes) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const FieldValue a = fixtures::nonzero_value(Q, rng), b = fixtures::nonzero_value(Q, rng), l = fixtures::nonzero_value(Q, rng);
    if (a == b) continue;
    const auto c1 = c_table(a, b, l, q(0)), c2 = c_table(b, a, l, q(0));
    EXPECT_EQ(c1, c2);
  }
}

TEST(Equivalence, Laws) {
  for (Field f : {Q, Field::prime_field(5)}) {
    std::mt19937_64 rng(17 + f->order());
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<FieldValue> c;
      for (int i = 0; i < 6; ++i) c.push_back(fixtures::small_value(f, rng));
      c[0] = FieldValue::one(f);
      const BinaryForm F(f, c);
      const FieldValue a = fixtures::nonzero_value(f, rng), cc = fixtures::small_value(f, rng), d = fixtures::nonzero_value(f, rng);
      const BinaryForm G(f, F.transformed(a, cc, d));
      // reflexive
      EXPECT_TRUE(equivalent_fixing_point(F, F).witness);
      // an explicit witness and its inverse
      const StabilizerMap m{a, cc, d};
      EXPECT_TRUE(is_witness(F, G, m));
      EXPECT_TRUE(is_witness(G, F, m.inverse()));
      const EquivalenceResult r = equivalent_fixing_point(F, G), s = equivalent_fixing_point(G, F);
      ASSERT_TRUE(r.witness) << F.to_string() << " / " << G.to_string();
      ASSERT_TRUE(s.witness);
      EXPECT_TRUE(is_witness(F, G, *r.witness));
      EXPECT_TRUE(is_witness(G, F, *s.witness));
      // scaling the coefficients does not change the class
      std::vector<FieldValue> scaled = F.coeffs();
      for (auto& x : scaled) x *= FieldValue::from_integer(f, 3);
      EXPECT_EQ(BinaryForm(f, scaled), F);
    }
  }
}

TEST(Equivalence, ExhaustiveCountsEveryMap) {
  const Field f = Field::prime_field(5);
  const BinaryForm F = form(f, {1, 0, 1}), G = form(f, {1, 1, 0});
  const EquivalenceResult r = equivalent_exhaustive(F, G);
  EXPECT_EQ(r.maps_searched, 4u * 5u * 4u);
}

TEST(Equivalence, ReferenceFormsAreNotEquivalentOverQ) {
  const BinaryForm F1 = form(Q, {4, -1, -30, -16, 54, 88, 52, 12, 0});
  const BinaryForm F2 = form(Q, {1, 3, -22, -12, 54, 88, 52, 12, 0});
  const EquivalenceResult r = equivalent_fixing_point(F1, F2);
  EXPECT_FALSE(r.witness);
  EXPECT_EQ(r.method, "exact-solver");
  EXPECT_FALSE(r.elimination_failure.empty());
  ASSERT_GE(r.certifying_primes.size(), 2u);
  for (auto p : r.certifying_primes) {
    EXPECT_TRUE(is_good_prime(F1, F2, p));
    const Field gf = Field::prime_field(p);
    EXPECT_FALSE(equivalent_exhaustive(detail::reduce_mod(F1, gf), detail::reduce_mod(F2, gf)).witness);
  }
}

TEST(Equivalence, SolverAgreesWithSmallPrimeSearch) {
  // Random equivalent pairs over Q with small witnesses are always found by
  // the exact solver, and reductions of inequivalent pairs never contradict it.
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FieldValue> c;
    for (int i = 0; i < 5; ++i) c.push_back(fixtures::small_value(Q, rng));
    c[0] = q(1);
    c[4] = fixtures::nonzero_value(Q, rng);
    const BinaryForm F(Q, c);
    const BinaryForm G(Q, F.transformed(fixtures::nonzero_value(Q, rng), fixtures::small_value(Q, rng), fixtures::nonzero_value(Q, rng)));
    EXPECT_TRUE(equivalent_over_q(F, G).witness) << F.to_string() << " / " << G.to_string();
  }
}

TEST(Equivalence, CharacteristicTwoInstances) {
  const Field f = Field::extension_field(2, 2);
  const FieldValue one = FieldValue::one(f), g = FieldValue::generator(f);
  const FieldValue vals[] = {one, g, g + one};
  for (auto& a : vals)
    for (auto& b : vals) {
      if (a == b) continue;
      const Parametrization p1 = build_parametrization(a, one, one), p2 = build_parametrization(b, one, one);
      const PlaneCurve g1 = quartic(f, a.to_string(), "1", "1"), g2 = quartic(f, b.to_string(), "1", "1");
      const BinaryForm F1 = attach_F(pullback_form(p1, g2, a, b, one, one).G);
      const BinaryForm F2 = attach_F(pullback_form(p2, g1, b, a, one, one).G);
      const EquivalenceResult r = equivalent_fixing_point(F1, F2);
      EXPECT_FALSE(r.witness) << a.to_string() << ", " << b.to_string();
      EXPECT_EQ(r.maps_searched, 3u * 4u * 3u);
    }
}

TEST(IdentifiedPoints, RootsAndSupport) {
  const BinaryForm F = form(Q, {0, 1, -3, 2, 0});  // u v (v - u)(v - 2u) up to order
  const auto roots = binary_roots(F);
  unsigned total = 0;
  for (auto& [p, m] : roots) total += m;
  EXPECT_EQ(total, 4u);
  const FieldValue one = q(1), zero = q(0);
  const IdentifiedPoints id = identified_points_divisor(F, {P1Point::make(zero, one)});
  EXPECT_EQ(id.residual_degree, 0u);
  EXPECT_EQ(id.support.size(), 4u);
  EXPECT_FALSE(id.type_I());
  const IdentifiedPoints single = identified_points_divisor(form(Q, {0, 0, 1}), {P1Point::make(zero, one)});
  EXPECT_EQ(single.support.size(), 1u);
  EXPECT_TRUE(single.type_I());
}
