#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tightcore/errors.hpp"
#include "tightcore/semigroup.hpp"

using namespace tightcore;

namespace {

// Membership in the semigroup generated by gens, by brute-force sums.
std::set<std::uint32_t> brute_members(const std::vector<std::uint32_t>& gens, std::uint32_t bound) {
  std::set<std::uint32_t> out{0};
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto a : std::vector<std::uint32_t>(out.begin(), out.end())) {
      for (auto g : gens) {
        if (a + g <= bound && out.insert(a + g).second) grew = true;
      }
    }
  }
  return out;
}

// Power-series quotient a / b in k[[t]] up to t^prec; nullopt if b does not divide a there.
std::optional<std::vector<Scalar>> series_divide(const Field& k, const SeriesElem& a, const SeriesElem& b,
                                                  std::uint32_t prec) {
  const std::uint32_t vb = b.valuation();
  std::vector<Scalar> rem(prec + vb + 1, Scalar{0});
  for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = a.coeff(i);
  for (std::uint32_t i = 0; i < vb; ++i) {
    if (rem[i].v != 0) return std::nullopt;
  }
  const Scalar lead_inv = k.inv(b.coeff(vb));
  std::vector<Scalar> q(prec, Scalar{0});
  for (std::uint32_t i = 0; i < prec; ++i) {
    q[i] = k.mul(rem[i + vb], lead_inv);
    for (std::size_t j = vb; j <= b.degree() && i + j < rem.size(); ++j) {
      rem[i + j] = k.sub(rem[i + j], k.mul(q[i], b.coeff(j)));
    }
  }
  return q;
}

// Oracle for (f) = (g): both quotients are units of k[[t]] with support in S below the precision.
bool same_principal(const SeriesElem& f, const SeriesElem& g, std::uint32_t prec = 12) {
  const Field& k = f.ring().field();
  const SemigroupDesc& S = f.ring().semigroup();
  for (const auto& [a, b] : {std::pair{f, g}, std::pair{g, f}}) {
    auto q = series_divide(k, a, b, prec);
    if (!q || (*q)[0].v == 0) return false;
    for (std::size_t i = 0; i < q->size(); ++i) {
      if ((*q)[i].v != 0 && !S.contains(i)) return false;
    }
  }
  return true;
}

SeriesElem E(const SgRingPtr& R, const std::string& s) { return SeriesElem::parse(R, s); }
SemigroupIdeal I_(const SgRingPtr& R, const std::string& s) { return SemigroupIdeal::parse(R, s); }

SeriesElem random_element(const SgRingPtr& R, std::mt19937_64& rng, std::uint32_t min_val, std::uint32_t max_deg) {
  const Field& k = R->field();
  std::vector<Scalar> v(max_deg + 1, Scalar{0});
  for (std::uint32_t i = min_val; i <= max_deg; ++i) {
    if (R->semigroup().contains(i) && rng() % 2) v[i] = k.from_random_word(rng());
  }
  v[min_val] = Scalar{1};
  return SeriesElem(R, v);
}

}  // namespace

TEST(SemigroupDesc, Combinatorics) {
  auto S = SemigroupDesc::from_generators({3, 5});
  EXPECT_EQ(S.gaps(), (std::vector<std::uint32_t>{1, 2, 4, 7}));
  EXPECT_EQ(S.frobenius_number(), 7);
  EXPECT_EQ(S.conductor(), 8u);
  EXPECT_FALSE(S.has_maximal_conductor());

  auto cusp = SemigroupDesc::from_generators({2, 3});
  EXPECT_EQ(cusp.conductor(), 2u);
  EXPECT_TRUE(cusp.has_maximal_conductor());

  for (std::uint32_t n = 1; n <= 6; ++n) {
    auto M = SemigroupDesc::maximal_conductor(n);
    EXPECT_TRUE(M.has_maximal_conductor());
    EXPECT_EQ(M.conductor(), n == 1 ? 0u : n);
    EXPECT_EQ(M.multiplicity(), n);
  }
  EXPECT_THROW(SemigroupDesc::from_generators({4, 6}), DomainError);
  EXPECT_THROW(SemigroupDesc::from_generators({}), DomainError);
  // Redundant generators are dropped.
  EXPECT_EQ(SemigroupDesc::from_generators({2, 3, 4, 5}).generators(), (std::vector<std::uint32_t>{2, 3}));
}

TEST(SemigroupDesc, AgreesWithBruteForceSums) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::uint32_t> gens;
    const int count = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) gens.push_back(2 + static_cast<std::uint32_t>(rng() % 9));
    std::uint32_t g = 0;
    for (auto x : gens) g = std::gcd(g, x);
    if (g != 1) continue;
    auto S = SemigroupDesc::from_generators(gens);
    auto members = brute_members(gens, 120);
    for (std::uint32_t i = 0; i <= 100; ++i) EXPECT_EQ(S.contains(i), members.count(i) == 1) << i;
    EXPECT_TRUE(S.conductor() == 0 || members.count(S.conductor() - 1) == 0);
  }
}

TEST(SemigroupIdeal, ParsePrintAndMembership) {
  auto R = semigroup_ring(5, 1, 3);
  auto I = I_(R, "<t^3 + t^4, t^5>");
  EXPECT_EQ(I.order(), 3u);
  EXPECT_TRUE(I.contains(E(R, "t^3 + t^4")));
  EXPECT_TRUE(I.contains(E(R, "t^6")));
  EXPECT_FALSE(I.contains(E(R, "t^3")));
  EXPECT_EQ(I_(R, I.to_string()), I);
  EXPECT_EQ(sg_maximal_ideal(R).to_string(), "<t^3, t^4, t^5>");
  EXPECT_THROW(E(R, "t^2"), DomainError);
  try {
    I_(R, "<t^3, t^ + 1>");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.column(), 6);
  }
}

TEST(SemigroupIdeal, MonomialIntersectionsMatchExponentSets) {
  std::mt19937_64 rng(11);
  for (std::uint32_t n : {2u, 3u, 4u}) {
    auto R = semigroup_ring(3, 1, n);
    for (int trial = 0; trial < 30; ++trial) {
      auto random_monomial_ideal = [&](std::set<std::uint32_t>& exps) {
        std::vector<SeriesElem> gens;
        for (int g = 0; g < 2; ++g) {
          std::uint32_t e = n + static_cast<std::uint32_t>(rng() % (2 * n));
          gens.push_back(SeriesElem::monomial(R, e, Scalar{1}));
          for (std::uint32_t s = 0; s < 40; ++s) {
            if (R->semigroup().contains(s)) exps.insert(e + s);
          }
        }
        return SemigroupIdeal(R, gens);
      };
      std::set<std::uint32_t> a, b;
      auto A = random_monomial_ideal(a);
      auto B = random_monomial_ideal(b);
      auto C = sg_intersect(A, B);
      for (std::uint32_t j = 0; j < 30; ++j) {
        const bool expect = a.count(j) && b.count(j);
        if (!R->semigroup().contains(j)) continue;
        EXPECT_EQ(C.contains(SeriesElem::monomial(R, j, Scalar{1})), expect) << "n=" << n << " j=" << j;
      }
    }
  }
}

TEST(CanonicalPrincipal, Examples) {
  auto R2 = semigroup_ring(5, 1, 2);
  auto f = E(R2, "t^2 + t^3 + t^4 + t^5");
  auto c = canonical_principal(f);
  ASSERT_EQ(c.mu(), 1u);
  EXPECT_EQ(c.minimal_generators()[0], E(R2, "t^2 + t^3"));
  EXPECT_TRUE(same_principal(f, c.minimal_generators()[0]));

  auto R3 = semigroup_ring(5, 1, 3);
  EXPECT_EQ(canonical_principal(E(R3, "t^4 + t^7")).minimal_generators()[0], E(R3, "t^4"));
  EXPECT_TRUE(same_principal(E(R3, "t^4 + t^7"), E(R3, "t^4")));
  EXPECT_EQ(canonical_principal(E(R3, "t^5")).minimal_generators()[0], E(R3, "t^5"));

  EXPECT_THROW(canonical_principal(E(R3, "1 + t^3")), DomainError);
  EXPECT_THROW(canonical_principal(SeriesElem(R3, {})), DomainError);
  auto odd = SemigroupRing::make(Field::make(5, 1), SemigroupDesc::from_generators({3, 5}));
  EXPECT_THROW(canonical_principal(E(odd, "t^3")), PreconditionError);
}

TEST(CanonicalPrincipal, UnitMultiplesShareTheGenerator) {
  std::mt19937_64 rng(3);
  for (std::uint32_t n : {2u, 3u, 4u}) {
    auto R = semigroup_ring(7, 1, n);
    for (int trial = 0; trial < 4; ++trial) {
      auto f = random_element(R, rng, n + static_cast<std::uint32_t>(rng() % n), 3 * n + 2);
      auto g = canonical_principal(f).minimal_generators()[0];
      EXPECT_EQ(g.valuation(), f.valuation());
      EXPECT_EQ(g.coeff(g.valuation()).v, 1u);
      EXPECT_LT(g.degree(), g.valuation() + n);
      EXPECT_TRUE(same_principal(f, g));
      for (int u = 0; u < 50; ++u) {
        auto unit = random_element(R, rng, 0, 2 * n);
        EXPECT_EQ(canonical_principal(unit * f).minimal_generators()[0], g);
      }
    }
  }
}

TEST(TightClosureSg, Examples) {
  auto R2 = semigroup_ring(5, 1, 2);
  EXPECT_EQ(tight_closure_sg(I_(R2, "<t^2 + t^3>")), I_(R2, "<t^2, t^3>"));
  auto R3 = semigroup_ring(5, 1, 3);
  EXPECT_EQ(tight_closure_sg(I_(R3, "<t^5 + t^6>")), I_(R3, "<t^5, t^6, t^7>"));
  auto closed = I_(R3, "<t^4, t^5, t^6>");
  EXPECT_EQ(tight_closure_sg(closed), closed);
  EXPECT_TRUE(tight_closure_sg(SemigroupIdeal(R3, {})).is_zero());
}

// (f) k[[t]] meets R in the t^j (j in S) divisible by f in k[[t]].
TEST(TightClosureSg, MatchesSeriesDivisionOracle) {
  std::mt19937_64 rng(5);
  for (std::uint32_t n : {2u, 3u, 5u}) {
    auto R = semigroup_ring(5, 1, n);
    for (int trial = 0; trial < 5; ++trial) {
      auto f = random_element(R, rng, n + static_cast<std::uint32_t>(rng() % (n + 1)), 3 * n);
      auto closure = tight_closure_sg(SemigroupIdeal(R, {f}));
      for (std::uint32_t j = 0; j < 12; ++j) {
        if (!R->semigroup().contains(j)) continue;
        auto tj = SeriesElem::monomial(R, j, Scalar{1});
        EXPECT_EQ(closure.contains(tj), series_divide(R->field(), tj, f, 12).has_value()) << j;
      }
    }
  }
}

TEST(TightClosureSg, IdempotentAndExtensive) {
  std::mt19937_64 rng(9);
  for (std::uint32_t n : {2u, 3u, 4u}) {
    auto R = semigroup_ring(3, 2, n);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<SeriesElem> gens;
      for (int g = 0; g < 2; ++g) gens.push_back(random_element(R, rng, n + static_cast<std::uint32_t>(rng() % n), 3 * n));
      SemigroupIdeal I(R, gens);
      auto c = tight_closure_sg(I);
      EXPECT_TRUE(sg_contains(c, I));
      EXPECT_EQ(tight_closure_sg(c), c);
      EXPECT_EQ(integral_closure_sg(I), c);
    }
  }
}

TEST(StarCoreSg, ClosedFormExamples) {
  auto R3 = semigroup_ring(5, 1, 3);
  auto r = star_core_sg(sg_maximal_ideal(R3));
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.ideal, I_(R3, "<t^6, t^7, t^8>"));
  auto R2 = semigroup_ring(5, 1, 2);
  EXPECT_EQ(star_core_sg(I_(R2, "<t^2, t^3>")).ideal, I_(R2, "<t^4, t^5>"));

  EXPECT_THROW(star_core_sg(I_(R2, "<t^2 + t^3>")), PreconditionError);
  EXPECT_THROW(star_core_sg(SemigroupIdeal(R2, {})), PreconditionError);

  auto line = semigroup_ring(5, 1, 1);
  auto principal = I_(line, "<t^3>");
  EXPECT_EQ(star_core_sg(principal).ideal, principal);
}

TEST(StarCoreSg, PropertiesAcrossFamilies) {
  for (std::uint32_t n = 2; n <= 5; ++n) {
    auto R = semigroup_ring(7, 1, n);
    const auto& k = R->field();
    for (std::uint32_t m = n; m <= 2 * n; ++m) {
      auto I = sg_valuation_ideal(R, m);
      auto core = star_core_sg(I).ideal;
      EXPECT_EQ(core, sg_valuation_ideal(R, m + n));
      EXPECT_EQ(tight_closure_sg(core), core);
      // Inside every sampled principal reduction.
      for (std::uint64_t s = 0; s < 20; ++s) {
        std::vector<Scalar> v(m + n, Scalar{0});
        v[m] = Scalar{1};
        for (std::uint32_t j = 1; j < n; ++j) v[m + j] = k.from_random_word(mix_seed(s + 100, j));
        SemigroupIdeal J(R, {SeriesElem(R, v)});
        EXPECT_TRUE(sg_contains(J, core));
      }
      // The canonical form does not depend on the working window.
      EXPECT_EQ(SemigroupIdeal(R, core.minimal_generators(), 5), core);
      EXPECT_EQ(SemigroupIdeal(R, I.minimal_generators(), 5), I);
    }
  }
}

TEST(StarCoreSg, LineHasPrincipalIdealsOnly) {
  auto R = semigroup_ring(3, 1, 1);
  for (std::uint32_t m = 1; m <= 5; ++m) {
    auto I = SemigroupIdeal(R, {E(R, "t^" + std::to_string(m) + " + t^" + std::to_string(m + 2))});
    EXPECT_EQ(I.mu(), 1u);
    EXPECT_EQ(star_core_sg(tight_closure_sg(I)).ideal, tight_closure_sg(I));
    EXPECT_EQ(I, tight_closure_sg(I));
  }
}

TEST(StarCoreCrosscheck, Examples) {
  auto R2 = semigroup_ring(5, 1, 2);
  EXPECT_TRUE(star_core_crosscheck(I_(R2, "<t^2, t^3>"), 10, 1));
  auto R3 = semigroup_ring(5, 1, 3);
  EXPECT_TRUE(star_core_crosscheck(sg_maximal_ideal(R3), 10, 1));
  EXPECT_FALSE(star_core_crosscheck(sg_maximal_ideal(R3), 1, 1));
}

TEST(ConductorTestIdeal, Examples) {
  for (std::uint32_t n = 2; n <= 5; ++n) {
    auto R = semigroup_ring(5, 1, n);
    EXPECT_EQ(conductor_test_ideal(R), sg_maximal_ideal(R));
  }
  auto cusp = SemigroupRing::make(Field::make(5, 1), SemigroupDesc::from_generators({2, 3}));
  EXPECT_EQ(conductor_test_ideal(cusp).order(), 2u);
  auto odd = SemigroupRing::make(Field::make(5, 1), SemigroupDesc::from_generators({3, 5}));
  auto c = conductor_test_ideal(odd);
  EXPECT_EQ(c.order(), 8u);
  EXPECT_EQ(c.to_string(), "<t^8, t^9, t^10>");
}

TEST(SampledCore, CoreEqualsStarCoreOnTheCusp) {
  auto R = semigroup_ring(2, 20, 2, 1);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<SeriesElem> gens;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int g = 0; g < count; ++g) gens.push_back(random_element(R, rng, 2 + static_cast<std::uint32_t>(rng() % 4), 8));
    SemigroupIdeal I(R, gens);
    auto core = sampled_core_sg(I, SgCoreKind::core, 12, 100 + trial);
    auto star = sampled_core_sg(I, SgCoreKind::star_core, 12, 200 + trial);
    EXPECT_EQ(core.ideal, star.ideal) << I.to_string();
    EXPECT_TRUE(sg_contains(I, core.ideal));
    if (tight_closure_sg(I) == I) EXPECT_EQ(core.ideal, star_core_sg(I).ideal);
  }
}

TEST(SampledCore, PrincipalIdealsAreTheirOwnCores) {
  auto R = semigroup_ring(3, 12, 3, 1);
  auto I = SemigroupIdeal::parse(R, "<t^4 + 2*t^5 + t^7>");
  for (auto kind : {SgCoreKind::core, SgCoreKind::star_core}) {
    auto r = sampled_core_sg(I, kind, 5, 9);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.method, "principal");
    EXPECT_EQ(r.ideal, I);
    EXPECT_FALSE(r.tightly_closed);
  }
  auto two = sampled_core_sg(sg_maximal_ideal(R), SgCoreKind::core, 20, 9);
  EXPECT_FALSE(two.exact);
}
