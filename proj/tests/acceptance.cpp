// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <functional>
#include <iostream>
#include <random>

#include "fixtures.hpp"
#include "pcx/construction.hpp"

using namespace pcx;

namespace {

const Field Q = Field::rationals();

FieldValue el(Field f, const std::string& s) { return parse_element(f, s); }
ParameterSet params(const std::string& f, const std::string& a, const std::string& b, const std::string& l, const std::string& m) {
  return ParameterSet::parse(f, a, b, l, m);
}

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

ParameterSet random_params(Field f, std::mt19937_64& rng) {
  for (;;) {
    const FieldValue a = fixtures::nonzero_value(f, rng), b = fixtures::nonzero_value(f, rng);
    if (a != b) return ParameterSet::make(f, a, b, fixtures::nonzero_value(f, rng), fixtures::small_value(f, rng));
  }
}

Outcome uniqueness() {
  Outcome o;
  const PlaneCurve displayed = PlaneCurve::parse(Q, "z*(z - x)^3 + x*y^2*((z - x) - y)");
  for (const char* beta : {"2", "3"}) {
    const GammaPair g = build_gammas(params("q", "1", beta, "1", "1"));
    o.require(g.g1.kernel_dimension == 1 && g.g1.solved && *g.g1.solved == displayed, "alpha=1 kernel generator");
  }
  const GammaPair g2 = build_gammas(params("q", "2", "1", "1", "1"));
  o.require(g2.g1.kernel_dimension == 1 && g2.g1.matches(), "theta=2 kernel generator");
  for (Field f : {Q, Field::prime_field(5)}) {
    std::mt19937_64 rng(1000 + f->order());
    for (int i = 0; i < 10; ++i) {
      const ParameterSet p = random_params(f, rng);
      const GammaPair g = build_gammas(p);
      o.require(g.g1.matches() && g.g2.matches(), "random tuple " + p.to_string());
    }
  }
  return o;
}

Outcome figures() {
  Outcome o;
  const ParameterSet p = params("q", "1", "2", "1", "1");
  for (auto& fc : verify_figures(p)) o.require(fc.diffs.empty(), fc.surface + (fc.diffs.empty() ? "" : ": " + fc.diffs.front()));
  const FigureTable xp = figure_table(configuration_classes(p, Surface::x_prime()), "X'");
  o.require(xp.brackets.at("E_p(alpha)") == std::pair<long, long>{3, 0}, "E_p(alpha) bracket");
  o.require(xp.brackets.at("E_p(beta)") == std::pair<long, long>{0, 3}, "E_p(beta) bracket");
  o.require(xp.self.at("L_bc") == -3, "L_bc^2 on X'");
  const FigureTable x = figure_table(configuration_classes(p), "X");
  o.require(negative_part(x).size() == 9, "|R| = 9");
  return o;
}

Outcome contractions() {
  Outcome o;
  const ClassMap m = configuration_classes(params("q", "1", "2", "1", "1"));
  for (int i : {1, 2}) {
    const ContractionTrace tr = contract_sequence(m, i);
    o.require(tr.steps.size() == 10, "ten steps");
    for (auto& s : tr.steps) o.require(s.self == -1 && s.canonical_degree == -1, "(-1)-check at " + s.name);
    o.require(tr.steps.back().k_squared_after == 9, "K^2 = 9");
    o.require(image_degree(m, i).degree == 39, "degree 39");
  }
  return o;
}

Outcome intersections() {
  Outcome o;
  const ParameterSet p = params("q", "1", "2", "1", "1");
  const IntersectionAudit a = intersection_audit(p, build_forms(p), configuration_classes(p));
  o.require(a.ia_fulton == 2 && a.ia_blowup == 2, "I_a = 2 by both engines");
  o.require(a.b_chain == 6, "chain at b = 6");
  o.require(a.ib_fulton == a.ib_blowup && a.ib_fulton == a.b_chain + a.f1_roots_over_b, "I_b by both engines");
  o.require(a.forms_degree == 8, "deg F1 = 8");
  o.require(a.a_chain + a.b_chain + a.forms_degree == 16, "2 + 6 + 8 = 16");
  o.require(a.bezout.consistent && a.bezout.expected == 16, "resultant audit");
  return o;
}

Outcome coefficient_table() {
  Outcome o;
  // c_6 values from the pullback oracle at fixed tuples.
  struct Row {
    const char *a, *b, *l, *m, *c6;
  };
  const Row rows[] = {{"1", "2", "1", "1", "-1"},
                      {"3/2", "-1", "2", "1/3", "4016/9"},
                      {"-2", "5", "1/2", "-3", "-43181/256"},
                      {"7", "1/4", "-1", "2", "701/16"},
                      {"2/3", "-5/2", "3", "-1/2", "264573/8"}};
  for (auto& r : rows) {
    const FieldValue a = el(Q, r.a), b = el(Q, r.b), l = el(Q, r.l), m = el(Q, r.m);
    const Pullback pb = pullback_form(build_parametrization(a, l, m), PlaneCurve(gamma_equation(b, l, m)), a, b, l, m);
    auto n = [](long k) { return FieldValue::from_integer(Q, k); };
    const FieldValue l4 = l.pow(4), m3 = m.pow(3), ab = a * b, a2b2 = a.pow(2) * b.pow(2);
    const FieldValue printed[8] = {n(3) * a2b2,
                                   n(13) * a2b2 * m,
                                   n(22) * a2b2 * m.pow(2),
                                   -(n(3) * ab * (l4 * (a + b) - n(6) * ab * m3)),
                                   -(ab * m * (n(8) * l4 * b - n(7) * ab * m3 + n(6) * l4 * a)),
                                   -(ab * m.pow(2) * (n(3) * l4 * a - ab * m3 + n(7) * l4 * b)),
                                   el(Q, r.c6),
                                   l.pow(8) * b.pow(2) * m};
    for (unsigned i = 0; i < 8; ++i)
      o.require(pb.quotient.coefficient({7 - i, i}) == printed[i], "c_" + std::to_string(i) + " at " + r.a + "," + r.b + "," + r.l + "," + r.m);
  }
  return o;
}

Outcome verdicts_q() {
  Outcome o;
  const VerdictReport r = full_report(params("q", "1", "2", "1", "1"));
  o.require(r.all_passed(), "report checks");
  o.require(!r.projectively_equivalent(), "not projectively equivalent");
  o.require(!r.isomorphic(), "not isomorphic");
  o.require(!r.isomorphism.elimination_failure.empty(), "elimination failure recorded");
  o.require(r.isomorphism.certifying_primes.size() >= 2, "two good primes");
  o.require(!r.type_I().first && !r.type_I().second, "not type I");
  return o;
}

Outcome verdicts_mu_zero() {
  Outcome o;
  const ParameterSet p = params("q", "1", "-1", "1", "0");
  const VerdictReport r = full_report(p);
  o.require(r.all_passed(), "report checks");
  o.require(r.projectively_equivalent() && r.projective.witness, "projectively equivalent");
  if (r.projective.witness)
    o.require(r.projective.witness->xi == el(Q, "1") && r.projective.witness->theta == el(Q, "-1"), "witness (x:y:-z)");
  const PlaneCurve g1(gamma_equation(p.alpha, p.lambda, p.mu)), g2(gamma_equation(p.beta, p.lambda, p.mu));
  o.require(detail::exchanges(g1, g2, el(Q, "1"), el(Q, "-1")), "(x:y:-z) exchanges the quartics");
  o.require(r.isomorphic() && r.isomorphism.method == "identity", "identity witness on forms");
  return o;
}

Outcome characteristic_two() {
  Outcome o;
  const Field f = Field::parse("gf(4)");
  const char* els[] = {"1", "g", "g+1"};
  int pairs = 0;
  for (auto a : els)
    for (auto b : els) {
      if (std::string(a) >= std::string(b)) continue;
      ++pairs;
      const VerdictReport r = full_report(ParameterSet::make(f, el(f, a), el(f, b), el(f, "1"), el(f, "1")));
      o.require(r.all_passed(), "report checks");
      o.require(!r.isomorphic() && r.isomorphism.method == "exhaustive" && r.isomorphism.maps_searched <= 48, "not isomorphic");
      o.require(r.degrees() == std::pair<long, long>{39, 39}, "degrees");
    }
  o.require(pairs == 3, "three pairs");
  return o;
}

Outcome type_one() {
  Outcome o;
  const ParameterSet sets[] = {params("q", "1", "2", "1", "1"), params("q", "1", "-1", "1", "0"), params("gf(3)", "1", "2", "1", "0"),
                               params("gf(4)", "1", "g", "1", "1"), params("gf(4)", "1", "g+1", "1", "1"),
                               params("gf(4)", "g", "g+1", "1", "1")};
  for (auto& p : sets) {
    const FormData f = build_forms(p);
    const P1Point inf = P1Point::make(FieldValue::one(p.field), FieldValue::zero(p.field));
    const P1Point zero = P1Point::make(FieldValue::zero(p.field), FieldValue::one(p.field));
    for (const IdentifiedPoints& id : {identified_points_divisor(f.F1, f.extra1), identified_points_divisor(f.F2, f.extra2)}) {
      const auto& s = id.support;
      o.require(s.size() >= 2 && !id.type_I(), "support size at " + p.to_string());
      o.require(std::find(s.begin(), s.end(), inf) != s.end() && std::find(s.begin(), s.end(), zero) != s.end(),
                "(1:0) and (0:1) at " + p.to_string());
    }
  }
  return o;
}

Outcome properties() {
  Outcome o;
  // Field axioms.
  for (Field f : {Q, Field::prime_field(5), Field::parse("gf(4)"), Field::parse("gf(3^2)")}) {
    std::mt19937_64 rng(7 + f->order());
    const FieldValue zero = FieldValue::zero(f), one = FieldValue::one(f);
    for (int i = 0; i < 1000; ++i) {
      const FieldValue a = fixtures::small_value(f, rng, -20, 20), b = fixtures::nonzero_value(f, rng), c = fixtures::small_value(f, rng);
      o.require((a + b) + c == a + (b + c) && (a * b) * c == a * (b * c), "associativity");
      o.require(a + b == b + a && a * b == b * a, "commutativity");
      o.require(a * (b + c) == a * b + a * c, "distributivity");
      o.require(a + zero == a && a * one == a && a - a == zero, "identities");
      o.require(b * b.inverse() == one && (a / b) * b == a, "inverses");
    }
  }
  // Fulton against the blow-up recursion on random pairs through (0:0:1).
  for (Field f : {Q, Field::prime_field(5)}) {
    std::mt19937_64 rng(77 + f->order());
    int compared = 0;
    for (int attempt = 0; attempt < 2000 && compared < 50; ++attempt) {
      auto random_curve = [&](int d) {
        const int low = 1 + static_cast<int>(rng() % std::min(d, 3));
        Poly p(f, plane_vars());
        for (int i = 0; i <= d; ++i)
          for (int j = 0; i + j <= d; ++j)
            if (i + j >= low && rng() % 3 != 0)
              p.add_term({static_cast<unsigned>(i), static_cast<unsigned>(j), static_cast<unsigned>(d - i - j)}, fixtures::small_value(f, rng, -2, 2));
        return p;
      };
      const int d1 = 1 + static_cast<int>(rng() % 4), d2 = 1 + static_cast<int>(rng() % 4);
      const Poly a = random_curve(d1), b = random_curve(d2);
      if (a.is_zero() || b.is_zero() || a.total_degree() != d1 || b.total_degree() != d2) continue;
      const ProjPoint origin = ProjPoint::of(f, 0, 0, 1);
      try {
        const unsigned x = intersection_multiplicity(PlaneCurve(a), PlaneCurve(b), origin);
        const unsigned y = intersection_multiplicity_by_blowup(PlaneCurve(a), PlaneCurve(b), origin);
        o.require(x == y, "Fulton vs blow-up on " + a.to_string() + " / " + b.to_string());
        ++compared;
      } catch (const CommonComponent&) {
      } catch (const CenterNotInChart&) {
      }
    }
    o.require(compared >= 50, "50 random pairs over " + f->to_string());
  }
  // Lattice signature and pushforward pairing.
  std::vector<DivisorClass> basis;
  for (std::size_t i = 0; i < kLatticeRank; ++i) basis.push_back(DivisorClass::basis(i));
  const Signature s = signature(gram_matrix(basis));
  o.require(s.positive == 1 && s.negative == 10, "signature (1,10)");
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    std::array<long, kLatticeRank> u{}, v{};
    for (auto& x : u) x = static_cast<long>(rng() % 11) - 5;
    for (auto& x : v) x = static_cast<long>(rng() % 11) - 5;
    const DivisorClass C(u), D(v), E = DivisorClass::E(rng() % kPoints);
    const DivisorClass pc = C + pair(C, E) * E, pd = D + pair(D, E) * E;
    o.require(pair(pc, E) == 0 && pair(pc, pd) == pair(C, D) + pair(C, E) * pair(D, E), "pushforward pairing");
  }
  // Equivalence-relation laws.
  for (Field f : {Q, Field::prime_field(7)}) {
    std::mt19937_64 r2(9 + f->order());
    for (int i = 0; i < 10; ++i) {
      std::vector<FieldValue> c;
      for (int k = 0; k < 6; ++k) c.push_back(fixtures::small_value(f, r2));
      c[0] = FieldValue::one(f);
      const BinaryForm F(f, c);
      const StabilizerMap m{fixtures::nonzero_value(f, r2), fixtures::small_value(f, r2), fixtures::nonzero_value(f, r2)};
      const BinaryForm G(f, F.transformed(m.a, m.c, m.d));
      const EquivalenceResult fg = equivalent_fixing_point(F, G), gf = equivalent_fixing_point(G, F);
      o.require(equivalent_fixing_point(F, F).witness.has_value(), "reflexive");
      o.require(fg.witness && gf.witness && is_witness(F, G, *fg.witness) && is_witness(G, F, *gf.witness), "symmetric");
      o.require(is_witness(G, F, m.inverse()), "inverse witness");
      std::vector<FieldValue> scaled = G.coeffs();
      for (auto& x : scaled) x *= FieldValue::from_integer(f, 3);
      o.require(equivalent_fixing_point(F, BinaryForm(f, scaled)).witness.has_value(), "scaling invariance");
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"unique quartic through the 14 conditions", uniqueness},
      {"configuration tables on X' and X", figures},
      {"contractions and image degree 39", contractions},
      {"intersection audit 2 + 6 + 8 = 16", intersections},
      {"coefficient table of the pullback", coefficient_table},
      {"verdicts at (1,2,1,1) over Q", verdicts_q},
      {"verdicts at (1,-1,1,0) over Q", verdicts_mu_zero},
      {"characteristic 2 over GF(4)", characteristic_two},
      {"identified points are not of type I", type_one},
      {"property suites", properties},
  };
  int failed = 0, k = 0;
  for (auto& [name, fn] : criteria) {
    ++k;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << k << ". " << name << (o.ok ? "" : " (" + o.note + ")") << "\n";
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
