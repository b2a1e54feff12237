#include <gtest/gtest.h>

#include "chernikov/field.hpp"

using namespace chernikov;

namespace {

const Field& gf(unsigned k) { return Field::get(FieldSpec::with_default_modulus(k)); }

TEST(Field, AddExamples) {
  const Field& f4 = gf(2);
  EXPECT_EQ(field_add(FieldElement(f4, 0b11), FieldElement(f4, 0b01)).bits(), 0b10u);
  EXPECT_EQ(field_add(FieldElement(f4, 2), FieldElement(f4, 2)).bits(), 0u);
  EXPECT_EQ(field_add(FieldElement(f4, 1), FieldElement(f4, 0)).bits(), 1u);
}

TEST(Field, MulAndInverseExamples) {
  const Field& f4 = gf(2);
  EXPECT_EQ(f4.spec().modulus, 0b111u);
  EXPECT_EQ(field_mul(FieldElement(f4, 2), FieldElement(f4, 2)).bits(), 3u);  // t*t = t+1
  EXPECT_EQ(field_inv(FieldElement(f4, 2)).bits(), 3u);
  EXPECT_EQ(field_inv(FieldElement(Field::gf2(), 1)).bits(), 1u);
  for (unsigned k = 1; k <= 8; ++k) EXPECT_EQ(gf(k).inv(1), 1u);
}

TEST(Field, InverseOfZeroThrows) { EXPECT_THROW(gf(3).inv(0), domain_error); }

TEST(Field, MixedFieldsRejected) {
  EXPECT_THROW(field_add(FieldElement(gf(2), 1), FieldElement(gf(3), 1)), usage_error);
}

TEST(Field, Enumerate) {
  auto e = field_enumerate(FieldSpec::with_default_modulus(2));
  ASSERT_EQ(e.size(), 4u);
  for (Elem i = 0; i < 4; ++i) EXPECT_EQ(e[i].bits(), i);
  EXPECT_EQ(field_enumerate(FieldSpec::with_default_modulus(3)).size(), 8u);
  EXPECT_EQ(field_enumerate(FieldSpec::gf2()).size(), 2u);
}

TEST(Field, DefaultModuliAreSmallestIrreducible) {
  EXPECT_EQ(FieldSpec::with_default_modulus(2).modulus, 0b111u);
  EXPECT_EQ(FieldSpec::with_default_modulus(3).modulus, 0b1011u);
  EXPECT_EQ(FieldSpec::with_default_modulus(4).modulus, 0b10011u);
  EXPECT_EQ(FieldSpec::with_default_modulus(8).modulus, 0x11bu);
}

TEST(Field, SpecTextRoundTrip) {
  for (const char* s : {"gf2", "gf2^4:0x13", "gf2^8:0x11d"}) EXPECT_EQ(FieldSpec::parse(s).to_string(), s);
  EXPECT_EQ(FieldSpec::parse("gf2^3").modulus, 0b1011u);
  EXPECT_THROW(FieldSpec::parse("gf2^4:0x15"), usage_error);  // t^4+t^2+1 = (t^2+t+1)^2
  EXPECT_THROW(FieldSpec::parse("gf2^17"), usage_error);
  EXPECT_THROW(FieldSpec::parse("gf3"), usage_error);
}

TEST(Field, NonPrimitiveModulusStillAField) {
  // t^4+t^3+t^2+t+1 is irreducible but t has order 5.
  const Field& f = Field::get(FieldSpec::parse("gf2^4:0x1f"));
  for (Elem a = 1; a < 16; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
}

// Axioms exhaustively for k <= 4, with the carry-less product as an independent oracle.
TEST(FieldProperty, AxiomsExhaustive) {
  for (unsigned k = 1; k <= 4; ++k) {
    const Field& f = gf(k);
    const Elem q = f.size();
    auto slow_mul = [&](Elem a, Elem b) {
      std::uint64_t r = 0;
      for (unsigned i = 0; i < k; ++i)
        if ((b >> i) & 1u) r ^= std::uint64_t{a} << i;
      for (int i = 2 * static_cast<int>(k); i >= static_cast<int>(k); --i)
        if ((r >> i) & 1u) r ^= std::uint64_t{f.spec().modulus} << (i - static_cast<int>(k));
      return static_cast<Elem>(r);
    };
    for (Elem a = 0; a < q; ++a) {
      if (a) { EXPECT_EQ(f.mul(a, f.inv(a)), 1u); }
      EXPECT_EQ(f.sqrt(f.square(a)), a);
      for (Elem b = 0; b < q; ++b) {
        EXPECT_EQ(f.mul(a, b), slow_mul(a, b));
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        EXPECT_EQ(f.square(Field::add(a, b)), Field::add(f.square(a), f.square(b)));
        for (Elem c = 0; c < q; ++c) {
          EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
          EXPECT_EQ(f.mul(a, Field::add(b, c)), Field::add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST(FieldProperty, InverseForLargerFields) {
  for (unsigned k : {8u, 12u, 16u}) {
    const Field& f = gf(k);
    for (Elem a = 1; a < f.size(); a += 97) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  }
}

TEST(Field, ElementTextRoundTrip) {
  const Field& f = gf(8);
  for (Elem a = 0; a < 256; ++a) EXPECT_EQ(f.parse(f.format(a)), a);
  EXPECT_EQ(f.parse("0x1b"), 0x1bu);
  EXPECT_THROW(f.parse("100"), usage_error);
  EXPECT_THROW(f.parse("zz"), usage_error);
}

}  // namespace
