#include <gtest/gtest.h>

#include <random>

#include "tightcore/errors.hpp"
#include "tightcore/poly_io.hpp"

using namespace tightcore;

namespace {

// Independent GF(8) arithmetic: bit-polynomials reduced by x^3 + x + 1.
unsigned gf8_mul(unsigned a, unsigned b) {
  unsigned r = 0;
  for (int i = 0; i < 3; ++i) {
    if (b & (1u << i)) r ^= a << i;
  }
  for (int d = 4; d >= 3; --d) {
    if (r & (1u << d)) r ^= 0b1011u << (d - 3);
  }
  return r;
}

PolyRingPtr ring(std::uint32_t p, std::uint32_t e, std::vector<std::string> vars) {
  return PolyRing::make(Field::make(p, e), std::move(vars));
}

Poly P(const PolyRingPtr& R, const std::string& s) { return parse_poly(R, s); }

Poly random_poly(const PolyRingPtr& R, std::mt19937_64& rng, int terms, int max_exp) {
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < R->nvars(); ++v) m.set(v, static_cast<std::uint16_t>(rng() % (max_exp + 1)));
    ts.push_back({m, R->field().from_random_word(rng())});
  }
  return Poly::from_terms(R, std::move(ts));
}

}  // namespace

TEST(Scalar, PrimeFieldBasics) {
  auto k2 = Field::make(2, 1);
  EXPECT_EQ(k2->add(k2->one(), k2->one()), k2->zero());
  auto k3 = Field::make(3, 1);
  EXPECT_EQ(k3->mul(k3->from_int(2), k3->from_int(2)), k3->one());
  EXPECT_EQ(k3->from_int(-1), k3->from_int(2));
}

TEST(Scalar, Gf8ModulusAndTable) {
  auto k = Field::make(2, 3);
  EXPECT_EQ(k->modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
  for (unsigned a = 0; a < 8; ++a) {
    for (unsigned b = 0; b < 8; ++b) EXPECT_EQ(k->mul({a}, {b}).v, gf8_mul(a, b)) << a << "*" << b;
  }
  const Scalar alpha = k->generator();
  EXPECT_EQ(k->mul(alpha, k->pow(alpha, 6)), k->one());
}

TEST(Scalar, DivisionByZero) {
  auto k = Field::make(5, 2);
  EXPECT_THROW(k->div(k->one(), k->zero()), DomainError);
  EXPECT_THROW(k->inv(k->zero()), DomainError);
}

TEST(Scalar, Frobenius) {
  auto k2 = Field::make(2, 1);
  EXPECT_EQ(k2->frobenius(k2->one(), 2), k2->one());
  auto k9 = Field::make(3, 2);
  const Scalar a = k9->generator();
  EXPECT_EQ(k9->frobenius(a, 3), k9->pow(a, 3));
  EXPECT_NE(k9->frobenius(a, 3), a);
  EXPECT_EQ(k9->frobenius(a, 9), a);
  auto k5 = Field::make(5, 1);
  EXPECT_EQ(k5->frobenius(k5->from_int(2), 5), k5->from_int(2));
  EXPECT_THROW(k5->frobenius(k5->one(), 6), DomainError);
}

TEST(Scalar, InverseLawExhaustiveSmallFields) {
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 8}, {3, 5}, {5, 3}, {7, 2}, {251, 1}}) {
    auto k = Field::make(p, e);
    for (std::uint64_t v = 1; v < k->size(); ++v) {
      const Scalar a{v};
      ASSERT_EQ(k->mul(a, k->pow(a, k->size() - 2)), k->one()) << p << "^" << e << " a=" << v;
      ASSERT_EQ(k->mul(k->div(a, {1 + v % (k->size() - 1)}), {1 + v % (k->size() - 1)}), a);
    }
  }
}

TEST(Scalar, InverseLawRandomLargeFields) {
  std::mt19937_64 rng(7);
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 20}, {3, 13}, {11, 6}, {13, 6}, {2, 40}}) {
    auto k = Field::make(p, e);
    for (int i = 0; i < 300; ++i) {
      Scalar a = k->from_random_word(rng());
      Scalar b = k->from_random_word(rng());
      if (a.v == 0) continue;
      ASSERT_EQ(k->mul(a, k->pow(a, k->size() - 2)), k->one());
      const std::uint64_t q = p;
      ASSERT_EQ(k->frobenius(k->add(a, b), q), k->add(k->frobenius(a, q), k->frobenius(b, q)));
      ASSERT_EQ(k->frobenius(k->mul(a, b), q), k->mul(k->frobenius(a, q), k->frobenius(b, q)));
    }
  }
}

TEST(Scalar, ParametersReproducibleAndNonzero) {
  auto a = Field::make(2, 20, 42, {"u", "v", "w"});
  auto b = Field::make(2, 20, 42, {"u", "v", "w"});
  auto c = Field::make(2, 20, 43, {"u", "v", "w"});
  bool differs = false;
  for (const char* n : {"u", "v", "w"}) {
    ASSERT_TRUE(a->parameter(n).has_value());
    EXPECT_NE(a->parameter(n)->v, 0u);
    EXPECT_EQ(*a->parameter(n), *b->parameter(n));
    differs = differs || *a->parameter(n) != *c->parameter(n);
  }
  EXPECT_TRUE(differs);
}

TEST(Poly, ArithmeticExamples) {
  auto R3 = ring(3, 1, {"x", "y"});
  EXPECT_EQ(P(R3, "x + y") + P(R3, "x - y"), P(R3, "2*x"));
  EXPECT_EQ(P(R3, "x + y") * P(R3, "x + 2*y"), P(R3, "x^2 + 2*y^2"));
  auto R2 = ring(2, 1, {"x", "y"});
  EXPECT_EQ(pow(P(R2, "x + y"), 2), P(R2, "x^2 + y^2"));
  EXPECT_EQ(pow(P(R2, "x + y"), 4), P(R2, "x^4 + y^4"));
  EXPECT_EQ(pow(P(R2, "x + 1"), 0), P(R2, "1"));
  EXPECT_EQ(pow(P(R2, "x"), 3), P(R2, "x^3"));
}

TEST(Poly, RingMismatch) {
  auto A = ring(3, 1, {"x", "y"});
  auto B = ring(5, 1, {"x", "y"});
  EXPECT_THROW(P(A, "x") + P(B, "x"), DomainError);
}

TEST(Poly, PrintingAndRoundTrip) {
  auto R = ring(3, 1, {"x", "y", "z"});
  EXPECT_EQ(format_poly(Poly(R)), "0");
  EXPECT_EQ(format_poly(P(R, "y + 2*x^2*y + 1")), "2*x^2*y + y + 1");
  auto K = ring(2, 4, {"x", "y"});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Poly f = random_poly(K, rng, 5, 4);
    EXPECT_EQ(parse_poly(K, format_poly(f)), f) << format_poly(f);
  }
}

TEST(Poly, ParseErrorHasColumn) {
  auto R = ring(3, 1, {"x", "y"});
  try {
    parse_poly(R, "x + * y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5);
  }
  EXPECT_THROW(parse_poly(R, "x + q"), ParseError);
}

TEST(Poly, RingLawsRandomized) {
  std::mt19937_64 rng(11);
  for (auto R : {ring(2, 3, {"x", "y", "z"}), ring(7, 1, {"x", "y"}), ring(3, 2, {"x", "y", "z"})}) {
    for (int i = 0; i < 60; ++i) {
      Poly f = random_poly(R, rng, 4, 3), g = random_poly(R, rng, 4, 3), h = random_poly(R, rng, 3, 3);
      ASSERT_EQ((f + g) + h, f + (g + h));
      ASSERT_EQ(f + g, g + f);
      ASSERT_EQ((f * g) * h, f * (g * h));
      ASSERT_EQ(f * g, g * f);
      ASSERT_EQ(f * (g + h), f * g + f * h);
      ASSERT_TRUE((f - f).is_zero());
      if (!f.is_zero() && !g.is_zero()) {
        ASSERT_EQ((f * g).leading_monomial(), f.leading_monomial() * g.leading_monomial());
      }
      const std::uint64_t p = R->field().characteristic();
      ASSERT_EQ(frobenius_power(f, p), pow(f, p));
    }
  }
}

TEST(MonomialOrders, Basics) {
  Monomial x = Monomial::variable(0), y = Monomial::variable(1), z = Monomial::variable(2);
  auto grevlex = MonomialOrder::grevlex(3);
  auto lex = MonomialOrder::lex(3);
  EXPECT_EQ(grevlex.compare(x * x, y), std::strong_ordering::greater);
  EXPECT_EQ(lex.compare(y * y * y, x), std::strong_ordering::less);
  EXPECT_EQ(grevlex.compare(x * z * z, y * y * y), std::strong_ordering::less);
  auto elim = MonomialOrder::elimination(3, {2});
  EXPECT_EQ(elim.compare(z, x * x * x * y), std::strong_ordering::greater);
}
