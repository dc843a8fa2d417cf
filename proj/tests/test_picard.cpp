#include <gtest/gtest.h>

#include <random>

#include "pcx/picard.hpp"

using namespace pcx;

namespace {

// Multiplicities written out by hand, in point order
// a, a1, b, b1, b2, b3, p(alpha), p(beta), q, r.
BlowUpData hand_data() {
  BlowUpData d;
  d.curves = {{"Gamma1", 4, {1, 1, 1, 1, 1, 1, 3, 0, 1, 1}},
              {"Gamma2", 4, {1, 1, 1, 1, 1, 1, 0, 3, 1, 1}},
              {"L_ab", 1, {1, 1, 1, 0, 0, 0, 0, 0, 0, 0}},
              {"L_ac", 1, {1, 0, 0, 0, 0, 0, 1, 1, 0, 0}},
              {"L_bc", 1, {0, 0, 1, 1, 1, 1, 0, 0, 0, 0}}};
  auto prox = [](std::initializer_list<std::size_t> pts) {
    std::array<bool, kPoints> p{};
    for (auto i : pts) p[i] = true;
    return p;
  };
  d.exceptionals = {{"E_a", kA, prox({kA1})},   {"E_a1", kA1, prox({})},  {"E_b", kB, prox({kB1})},
                    {"E_b1", kB1, prox({kB2})}, {"E_b2", kB2, prox({kB3})}, {"E_b3", kB3, prox({kQ})},
                    {"E_q", kQ, prox({kR})},    {"E_r", kR, prox({})},    {"E_p(alpha)", kPAlpha, prox({})},
                    {"E_p(beta)", kPBeta, prox({})}};
  return d;
}

ClassMap classes_on_x() { return configuration_classes(hand_data(), Surface::x()); }

}  // namespace

TEST(Lattice, SignatureOfBasis) {
  std::vector<DivisorClass> b;
  for (std::size_t i = 0; i < kLatticeRank; ++i) b.push_back(DivisorClass::basis(i));
  const Signature s = signature(gram_matrix(b));
  EXPECT_EQ(s.positive, 1u);
  EXPECT_EQ(s.negative, 10u);
  EXPECT_EQ(s.zero, 0u);
}

TEST(Lattice, SignatureDetectsDegenerateGram) {
  // H and 2H span a rank-one lattice; E_a - E_b and H mix signs.
  const Signature s = signature(gram_matrix({DivisorClass::H(), mpz_class(2) * DivisorClass::H()}));
  EXPECT_EQ(s.positive, 1u);
  EXPECT_EQ(s.zero, 1u);
  const Signature t = signature(gram_matrix({DivisorClass::E(kA) - DivisorClass::E(kB), DivisorClass::H()}));
  EXPECT_EQ(t.positive, 1u);
  EXPECT_EQ(t.negative, 1u);
}

TEST(Lattice, CanonicalClass) {
  const DivisorClass k = canonical_class();
  EXPECT_EQ(pair_l(k, k), 9 - 10);
  EXPECT_EQ(pair_l(k, DivisorClass::H()), -3);
}

TEST(Classes, AdjunctionForRationalCurves) {
  // Every special curve is smooth and rational on X: C^2 + K.C = -2.
  const DivisorClass k = canonical_class();
  for (auto& [n, c] : classes_on_x()) EXPECT_EQ(pair_l(c, c) + pair_l(k, c), -2) << n;
}

TEST(Classes, GammaOnX) {
  const ClassMap m = classes_on_x();
  const DivisorClass& g1 = class_of(m, "Gamma1");
  const DivisorClass& g2 = class_of(m, "Gamma2");
  EXPECT_EQ(pair_l(g1, g1), -1);
  EXPECT_EQ(pair_l(g2, g2), -1);
  EXPECT_EQ(pair_l(g1, g2), 8);
  EXPECT_EQ(class_of(m, "E_b"), DivisorClass::E(kB) - DivisorClass::E(kB1));
  EXPECT_EQ(class_of(m, "E_r"), DivisorClass::E(kR));
  EXPECT_THROW(class_of(m, "E_z"), ParseError);
}

TEST(Classes, ClassesSpanTheLattice) {
  std::vector<DivisorClass> cs;
  for (auto& [n, c] : classes_on_x()) cs.push_back(c);
  const Signature s = signature(gram_matrix(cs));
  EXPECT_EQ(s.positive + s.negative, kLatticeRank);
}

TEST(Figures, AllSurfacesMatchGoldenTables) {
  const BlowUpData d = hand_data();
  const std::pair<Surface, FigureTable> panels[] = {{Surface::plane(), golden::plane()},
                                                    {Surface::a_b_p(), golden::a_b_p()},
                                                    {Surface::x_prime(), golden::x_prime()},
                                                    {Surface::x_q(), golden::x_q()},
                                                    {Surface::x(), golden::x()}};
  for (auto& [s, want] : panels) {
    const FigureTable got = figure_table(configuration_classes(d, s), s.name);
    const auto diffs = compare_tables(got, want);
    EXPECT_TRUE(diffs.empty()) << s.name << ": " << (diffs.empty() ? "" : diffs.front());
  }
}

TEST(Figures, CompareReportsDifferences) {
  FigureTable t = golden::x();
  t.self["E_q"] = -3;
  t.edges.erase(t.edges.begin());
  EXPECT_EQ(compare_tables(t, golden::x()).size(), 2u);
}

TEST(Figures, NegativePartOnX) {
  const FigureTable t = figure_table(classes_on_x(), "X");
  const auto r = negative_part(t);
  ASSERT_EQ(r.size(), 9u);
  int minus_two = 0;
  for (auto& n : r) minus_two += t.self.at(n) == -2;
  EXPECT_EQ(minus_two, 8);
}

TEST(Contraction, BothSequencesReachThePlane) {
  const ClassMap m = classes_on_x();
  for (int i : {1, 2}) {
    const ContractionTrace tr = contract_sequence(m, i);
    ASSERT_EQ(tr.steps.size(), 10u);
    for (std::size_t k = 0; k < tr.steps.size(); ++k) {
      EXPECT_EQ(tr.steps[k].self, -1);
      EXPECT_EQ(tr.steps[k].canonical_degree, -1);
      EXPECT_EQ(tr.steps[k].k_squared_after, -1 + static_cast<long>(k) + 1);
    }
    const DegreeResult d = image_degree(m, i);
    EXPECT_EQ(d.degree, 39);
    EXPECT_EQ(d.self_intersection, 1521);
    EXPECT_EQ(d.line_square, 1);
    EXPECT_TRUE(tower_resolution_check(m, i).ok());
  }
}

TEST(Contraction, PushforwardLaws) {
  const ClassMap m = classes_on_x();
  const ContractionTrace tr = contract_sequence(m, 1);
  const DivisorClass l = line_class(tr);
  // Pushed classes are orthogonal to every contracted curve and all land in
  // the rank-one lattice spanned by the line class.
  for (auto& [n, c] : tr.final_classes) {
    for (auto& s : tr.steps) EXPECT_EQ(pair_l(c, s.contracted), 0) << n << " vs " << s.name;
    const long deg = pair_l(c, l);
    EXPECT_EQ(c, mpz_class(deg) * l) << n;
  }
  std::vector<DivisorClass> pushed;
  for (auto& [n, c] : tr.final_classes) pushed.push_back(c);
  const Signature s = signature(gram_matrix(pushed));
  EXPECT_EQ(s.positive, 1u);
  EXPECT_EQ(s.negative, 0u);
}

TEST(Contraction, ProjectionFormulaOnRandomClasses) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-5, 5);
  const DivisorClass e = DivisorClass::E(kR);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<long, kLatticeRank> a{}, b{};
    for (auto& x : a) x = d(rng);
    for (auto& x : b) x = d(rng);
    const DivisorClass C(a), D(b);
    const DivisorClass pc = C + pair(C, e) * e, pd = D + pair(D, e) * e;
    EXPECT_EQ(pair(pc, e), 0);
    EXPECT_EQ(pair(pc, pd), pair(C, D) + pair(C, e) * pair(D, e));
  }
}

TEST(Contraction, RejectsCurvesThatAreNotMinusOne) {
  const ClassMap m = classes_on_x();
  EXPECT_THROW(contract_sequence(m, std::vector<std::string>{"L_ab"}), NotContractible);
  EXPECT_THROW(contract_sequence(m, std::vector<std::string>{"Gamma1", "E_b"}), NotContractible);
  TowerCheck bad = tower_resolution_check(m, 1, {"Gamma1", "E_b"});
  EXPECT_FALSE(bad.ok());
}
