#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pcx/exactfield.hpp"
#include "pcx/poly.hpp"

using namespace pcx;

namespace {

FieldValue random_element(Field f, std::mt19937_64& rng) {
  if (f->is_finite()) return FieldValue::from_index(f, static_cast<std::uint32_t>(rng() % f->order()));
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  return FieldValue::from_rational(f, mpq_class(num(rng), den(rng)));
}

std::vector<Field> all_fields() {
  return {Field::rationals(),          Field::prime_field(2),  Field::prime_field(3),
          Field::prime_field(5),       Field::prime_field(65521), Field::extension_field(2, 2),
          Field::extension_field(3, 2), Field::extension_field(2, 4), Field::extension_field(5, 3)};
}

}  // namespace

TEST(ExactField, Examples) {
  const Field Q = Field::rationals();
  EXPECT_EQ((FieldValue::from_rational(Q, mpq_class(1, 2)) + FieldValue::from_rational(Q, mpq_class(1, 3))).to_string(), "5/6");

  const Field gf4 = Field::parse("gf(2^2)");
  const FieldValue g = FieldValue::generator(gf4);
  EXPECT_EQ((g * g).to_string(), "g+1");
  EXPECT_EQ((g * g), g + FieldValue::one(gf4));

  const Field gf3 = Field::prime_field(3);
  EXPECT_EQ(FieldValue::from_integer(gf3, 2).inverse(), FieldValue::from_integer(gf3, 2));

  EXPECT_EQ(characteristic(Q), 0u);
  EXPECT_EQ(characteristic(gf4), 2u);
  EXPECT_EQ(characteristic(gf3), 3u);
}

TEST(ExactField, Errors) {
  const Field Q = Field::rationals();
  EXPECT_THROW(FieldValue::one(Q) / FieldValue::zero(Q), DivisionByZero);
  EXPECT_THROW(FieldValue::one(Q) + FieldValue::one(Field::prime_field(3)), DescriptorMismatch);
  EXPECT_THROW(enumerate(Q), InfiniteField);
  EXPECT_THROW(Field::prime_field(4), InvalidField);
  EXPECT_THROW(Field::parse("gf(2^2);modulus=1,0,1"), InvalidField);  // x^2+1 = (x+1)^2 mod 2
  EXPECT_THROW(Field::parse("r"), ParseError);
  EXPECT_THROW(Field::parse("gf(6)"), InvalidField);
}

TEST(ExactField, ParseSyntax) {
  EXPECT_EQ(Field::parse("q"), Field::rationals());
  EXPECT_EQ(Field::parse("gf(5)"), Field::prime_field(5));
  EXPECT_EQ(Field::parse("gf(4)"), Field::extension_field(2, 2));
  const Field f = Field::parse("gf(2^2);modulus=1,1,1");
  EXPECT_EQ(f, Field::extension_field(2, 2));
  EXPECT_EQ(f->order(), 4u);
  const Field h = Field::parse("gf(3^2)");
  EXPECT_EQ(h->order(), 9u);
}

TEST(ExactField, Enumerate) {
  for (auto f : all_fields()) {
    if (!f->is_finite() || f->order() > 1000) continue;
    const auto all = enumerate(f);
    ASSERT_EQ(all.size(), f->order()) << f->to_string();
    std::set<std::string> seen;
    for (auto& v : all) seen.insert(v.to_string());
    EXPECT_EQ(seen.size(), all.size());
    for (auto& a : all) {
      if (a.is_zero()) continue;
      std::set<std::string> image;
      for (auto& v : all) image.insert((a * v).to_string());
      EXPECT_EQ(image, seen);
    }
  }
}

TEST(ExactField, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(12345);
  for (auto f : all_fields()) {
    for (int i = 0; i < 1000; ++i) {
      const FieldValue a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
      ASSERT_EQ((a + b) + c, a + (b + c));
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a + b, b + a);
      ASSERT_EQ(a * b, b * a);
      ASSERT_TRUE((a - a).is_zero());
      if (!a.is_zero()) {
        ASSERT_TRUE((a * a.inverse()).is_one());
        ASSERT_EQ((b / a) * a, b);
      }
    }
  }
}

TEST(ExactField, RationalNormalization) {
  const Field Q = Field::rationals();
  const FieldValue v = FieldValue::from_rational(Q, mpq_class(6, -4));
  EXPECT_EQ(v.rational().get_num(), -3);
  EXPECT_EQ(v.rational().get_den(), 2);
  const FieldValue w = FieldValue::from_rational(Q, v.rational());
  EXPECT_EQ(v, w);
  EXPECT_EQ(v.to_string(), "-3/2");
}

TEST(ExactField, ElementText) {
  const Field gf4 = Field::extension_field(2, 2);
  for (auto& v : enumerate(gf4)) EXPECT_EQ(parse_element(gf4, v.to_string()), v);
  const Field gf27 = Field::extension_field(3, 3);
  for (auto& v : enumerate(gf27)) EXPECT_EQ(parse_element(gf27, v.to_string()), v);
  EXPECT_EQ(parse_element(Field::rationals(), "-7/4").to_string(), "-7/4");
}
