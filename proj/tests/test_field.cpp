#include <gtest/gtest.h>

#include <array>
#include <set>

#include "ibc/error.hpp"
#include "ibc/field.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ibc;

namespace {

void check_axioms(const FieldParams& F, int triples, std::uint64_t seed) {
  Rng rng(seed);
  const FieldElement zero = F.zero(), one = F.one();
  for (int i = 0; i < triples; ++i) {
    const FieldElement a = random_element(F, rng), b = random_element(F, rng), c = random_element(F, rng);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + zero, a);
    ASSERT_EQ(a * one, a);
    ASSERT_EQ(a + (-a), zero);
    ASSERT_EQ(a - b, a + (-b));
    if (!a.is_zero()) {
      ASSERT_EQ(a * inv(a), one);
      ASSERT_EQ((b / a) * a, b);
    }
  }
}

FieldElement f243_element(const FieldParams& F, const std::array<int, 5>& a) {
  return F.from_coeffs({a[0], a[1], a[2], a[3], a[4]});
}

}  // namespace

TEST(Field, SmallPrimeExamples) {
  const auto F = FieldParams::prime(13);
  EXPECT_EQ(inv(F.from_uint(3)), F.from_uint(9));
  EXPECT_EQ(pow(F.from_uint(3), 4), F.from_uint(3));
  EXPECT_EQ(F.from_uint(7) + F.from_uint(9), F.from_uint(3));
  EXPECT_EQ(F.from_uint(2) - F.from_uint(5), F.from_uint(10));
  EXPECT_EQ(F.from_integer(-1), F.from_uint(12));
  EXPECT_THROW(inv(F.zero()), Error);
  EXPECT_THROW(F.one() / F.zero(), Error);
}

TEST(Field, AxiomsSmallPrime) { check_axioms(FieldParams::prime(13), 2000, 1); }
TEST(Field, AxiomsP256) { check_axioms(support::p256(), 2000, 2); }
TEST(Field, AxiomsExtension) { check_axioms(support::f243(), 2000, 3); }
TEST(Field, AxiomsCharacteristicTwo) { check_axioms(support::f8(), 500, 4); }

TEST(Field, ExtensionMultiplicationMatchesSchoolbook) {
  const auto F = support::f243();
  std::mt19937 gen(7);
  for (int i = 0; i < 2000; ++i) {
    std::array<int, 5> a{}, b{};
    for (auto& v : a) v = static_cast<int>(gen() % 3);
    for (auto& v : b) v = static_cast<int>(gen() % 3);
    ASSERT_EQ(f243_element(F, a) * f243_element(F, b), f243_element(F, oracle::f243_mul(a, b)));
  }
}

TEST(Field, ExtensionGroupOrder) {
  const auto F = support::f243();
  for (unsigned i = 1; i < 243; ++i) ASSERT_TRUE(pow(F.from_index(i), 242).is_one()) << i;
  const auto G = support::f8();
  for (unsigned i = 1; i < 8; ++i) ASSERT_TRUE(pow(G.from_index(i), 7).is_one()) << i;
  // x * x^2 = x^3 = x + 1 in F_2[x]/(x^3 + x + 1).
  EXPECT_EQ(G.from_coeffs({0, 1}) * G.from_coeffs({0, 0, 1}), G.from_coeffs({1, 1}));
}

TEST(Field, SqrtMatchesResidueTable) {
  for (std::uint64_t p = 5; p <= 1024; ++p) {
    if (mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0) continue;
    const auto F = FieldParams::prime(p);
    const auto squares = oracle::squares(p);
    for (std::uint64_t v = 0; v < p; ++v) {
      const auto r = sqrt(F.from_uint(v));
      ASSERT_EQ(r.has_value(), squares.count(v) == 1) << "p=" << p << " v=" << v;
      if (r) {
        ASSERT_EQ(oracle::mulmod(support::u(*r), support::u(*r), p), v);
        ASSERT_LE(*r, -*r);
      }
    }
  }
}

TEST(Field, SqrtInExtensions) {
  for (const auto& F : {support::f243(), support::f8()}) {
    std::set<std::string> squares;
    const unsigned q = static_cast<unsigned>(F.order().get_ui());
    for (unsigned i = 0; i < q; ++i) {
      const auto x = F.from_index(i);
      squares.insert((x * x).to_hex());
    }
    for (unsigned i = 0; i < q; ++i) {
      const auto x = F.from_index(i);
      const auto r = sqrt(x);
      ASSERT_EQ(r.has_value(), squares.count(x.to_hex()) == 1);
      if (r) {
        ASSERT_EQ(*r * *r, x);
      }
    }
  }
}

TEST(Field, SqrtAtP256) {
  const auto F = support::p256();
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_element(F, rng);
    const auto r = sqrt(x * x);
    ASSERT_TRUE(r.has_value());
    ASSERT_TRUE(*r == x || *r == -x);
  }
}

TEST(Field, EncodingRoundTrip) {
  const auto F = support::p256();
  EXPECT_EQ(F.element_bytes(), 32u);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_element(F, rng);
    ASSERT_EQ(F.decode(x.to_bytes()), x);
  }
  const auto G = support::f243();
  EXPECT_EQ(G.element_bytes(), 5u);
  EXPECT_EQ(G.from_coeffs({1, 2, 0, 0, 1}).to_hex(), "0102000001");
  EXPECT_EQ(FieldParams::prime(10007).from_uint(10006).to_hex(), "2716");
}

TEST(Field, DecodeRejectsUnreducedAndWrongWidth) {
  const auto F = FieldParams::prime(13);
  EXPECT_EQ(F.decode(std::vector<std::uint8_t>{12}), F.from_uint(12));
  try {
    F.decode(std::vector<std::uint8_t>{13});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Malformed);
  }
  try {
    F.decode(std::vector<std::uint8_t>{0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Malformed);
  }
}

TEST(Field, IndexAndIntegerLift) {
  const auto F = support::f243();
  for (unsigned i = 0; i < 243; ++i) ASSERT_EQ(F.from_index(i).to_integer(), i);
  EXPECT_EQ(F.from_index(5).coeffs()[0], 2);
  EXPECT_EQ(F.from_index(5).coeffs()[1], 1);
}

TEST(Field, InvalidParameters) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InternalError;
  };
  EXPECT_EQ(code_of([] { FieldParams::prime(15); }), Errc::InvalidParams);
  EXPECT_EQ(code_of([] { FieldParams::prime(3); }), Errc::InvalidParams);
  // x^2 + 1 = (x + 1)^2 over F_2.
  EXPECT_EQ(code_of([] { FieldParams::extension(2, {1, 0, 1}); }), Errc::InvalidParams);
  // x^5 + 2 has the root 1 over F_3.
  EXPECT_EQ(code_of([] { FieldParams::extension(3, {2, 0, 0, 0, 0, 1}); }), Errc::InvalidParams);
  EXPECT_EQ(code_of([] { FieldParams::extension(3, {1, 2, 0, 0, 0, 2}); }), Errc::InvalidParams);
}

TEST(Field, MixingFieldsIsRejected) {
  const auto F = FieldParams::prime(13), G = FieldParams::prime(17);
  EXPECT_FALSE(F.one() == G.one());
  try {
    (void)(F.one() + G.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MismatchedField);
  }
  EXPECT_TRUE(FieldParams::prime(13) == F);
}

TEST(Field, RandomElementIsUniform) {
  const auto F = FieldParams::prime(13);
  Rng rng(99);
  std::array<int, 13> counts{};
  const int draws = 13000;
  for (int i = 0; i < draws; ++i) ++counts[support::u(random_element(F, rng))];
  double chi2 = 0;
  for (int c : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
  // 0.999 quantile of chi-square with 12 degrees of freedom.
  EXPECT_LT(chi2, 32.91);
  for (int i = 0; i < 1000; ++i) ASSERT_FALSE(random_nonzero(F, rng).is_zero());
}

TEST(Field, RandomBelowIsDeterministic) {
  Rng a(3), b(3);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(random_below(mpz_class(1000003), a), random_below(mpz_class(1000003), b));
}
