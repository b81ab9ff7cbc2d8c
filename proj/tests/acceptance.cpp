// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "monomial_oracle.hpp"
#include "tightcore/catalog.hpp"
#include "tightcore/cores.hpp"
#include "tightcore/semigroup.hpp"
#include "tightcore/session.hpp"

using namespace tightcore;

namespace {

// Everything the property suite re-audits after the example criteria ran.
struct Ledger {
  std::vector<IdealHandle> emitted;
  std::vector<ClosureReport> closures;
  std::vector<CoreBracket> cores;
} ledger;

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

IdealHandle I_(const RingPtr& R, std::vector<std::string> gens) { return make_ideal(R, gens); }

bool same(const IdealHandle& a, const IdealHandle& b) {
  ledger.emitted.push_back(a);
  return ideal_equal(a, b);
}

ClosureReport keep(ClosureReport r) {
  ledger.closures.push_back(r);
  ledger.emitted.push_back(r.lower);
  ledger.emitted.push_back(r.upper);
  return r;
}

CoreBracket keep(CoreBracket b) {
  ledger.cores.push_back(b);
  ledger.emitted.push_back(b.upper);
  if (b.lower) ledger.emitted.push_back(*b.lower);
  return b;
}

void diagonal_char_two(Check& c) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const std::string tag = " (seed " + std::to_string(seed) + ")";
    auto R = diagonal_hypersurface(2, seed);
    auto m = maximal_ideal(R);
    auto m2 = maximal_ideal_power(R, 2);
    auto P = I_(R, {"y^2", "z^2"});
    auto J = I_(R, {"y^2", "y*z", "z^2"});
    auto H = I_(R, {"x^2", "y*z"});

    auto sop = keep(tight_closure_sop(P));
    c.expect(sop.exact && same(sop.lower, ideal_sum(P, maximal_ideal_power(R, 3))), "(y^2,z^2)^*" + tag);

    auto indep = star_independent(R, {R->parse("y^2"), R->parse("y*z"), R->parse("z^2")});
    c.expect(indep.independent == Verdict::yes, "*-independence of y^2, yz, z^2" + tag);

    auto cl = keep(tight_closure_bracket(J));
    c.expect(cl.exact && same(cl.lower, m2), "(y^2,yz,z^2)^* = m^2" + tag);

    CoreOptions opts;
    opts.seed = seed;
    auto spread = star_spread(m2, opts);
    c.expect(spread.exact && spread.star_low == 3, "star spread of m^2" + tag);

    c.expect(reduction_number(H, m2) == 1u, "reduction number of H" + tag);
    auto core = core_colon_formula(m2, H);
    c.expect(same(core, maximal_ideal_power(R, 4)), "core(m^2) = m^4" + tag);

    auto star = keep(core_by_intersection(m2, CoreKind::star_core, opts));
    c.expect(star.exact && same(star.upper, maximal_ideal_power(R, 3)), "*-core(m^2) = m^3" + tag);

    auto cmp = compare_cores(m2, {seed}, opts);
    keep(cmp.star);
    keep(cmp.f);
    c.expect(cmp.relation == CoreRelation::strict && cmp.core && same(*cmp.core, maximal_ideal_power(R, 4)),
             "compare_cores strict" + tag);
    (void)m;
  }
}

void diagonal_char_three(Check& c) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const std::string tag = " (seed " + std::to_string(seed) + ")";
    auto R = diagonal_hypersurface(3, seed);
    auto m2 = maximal_ideal_power(R, 2);
    auto m4 = maximal_ideal_power(R, 4);
    auto m5 = maximal_ideal_power(R, 5);
    auto H = I_(R, {"x^2", "y*z"});

    c.expect(reduction_number(H, m2) == 2u, "reduction number of H" + tag);
    c.expect(same(ideal_colon(ideal_power(H, 3), m4), m5), "H^3 : m^4 = m^5" + tag);
    auto core = core_colon_formula(m2, H);
    c.expect(same(core, m5), "core(m^2) = m^5" + tag);

    CoreOptions opts;
    opts.seed = seed;
    auto star = keep(core_by_intersection(m2, CoreKind::star_core, opts));
    auto ceiling = ideal_sum(m4, I_(R, {"x*y*z", "x^2*y^2", "x^2*z^2", "y^2*z^2"}));
    c.expect(star.lower && ideal_contains(*star.lower, m4), "m^4 inside the *-core lower bound" + tag);
    c.expect(ideal_contains(ceiling, star.upper), "*-core upper bound under the ceiling" + tag);
    c.expect(star.lower && ideal_contains(*star.lower, core) && !ideal_equal(*star.lower, core),
             "core strictly inside the *-core lower bound" + tag);
  }
}

void e8_examples(Check& c) {
  for (std::uint32_t p : {11u, 13u}) {
    const std::string tag = " (p=" + std::to_string(p) + ")";
    auto R = e8_surface(p, 1);
    auto m = maximal_ideal(R);
    auto m2 = maximal_ideal_power(R, 2);
    auto L = I_(R, {"y", "z"});

    c.expect(analytic_spread(m) == 2, "analytic spread" + tag);
    auto spread = star_spread(m);
    c.expect(spread.exact && spread.star_low == 2, "star spread" + tag);
    for (const auto& gens : std::vector<std::vector<std::string>>{{"y", "z"}, {"x + z", "y"}, {"x + y", "z"}}) {
      auto cl = keep(tight_closure_bracket(I_(R, gens)));
      c.expect(cl.exact && same(cl.lower, m), "(" + gens[0] + "," + gens[1] + ")^* = m" + tag);
    }
    c.expect(reduction_number(L, m) == 1u, "reduction number of (y,z)" + tag);
    c.expect(same(ideal_colon(ideal_power(L, 2), m), m2), "(y,z)^2 : m = m^2" + tag);
    auto core = core_colon_formula(m, L);
    c.expect(same(core, m2), "core(m) = m^2" + tag);
    auto star = keep(core_by_intersection(m, CoreKind::star_core));
    c.expect(star.exact && same(star.upper, m2), "*-core(m) = m^2" + tag);
    auto cmp = compare_cores(m, {1});
    keep(cmp.star);
    keep(cmp.f);
    c.expect(cmp.relation == CoreRelation::equal, "core = *-core" + tag);
  }
}

void semigroup_closed_forms(Check& c) {
  for (std::uint32_t n = 2; n <= 5; ++n) {
    auto R = semigroup_ring(5, 10, n, 1);
    for (std::uint32_t m = n; m <= 2 * n; ++m) {
      const std::string tag = " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
      auto I = sg_valuation_ideal(R, m);
      auto r = star_core_sg(I);
      c.expect(r.exact && r.ideal == sg_valuation_ideal(R, m + n), "closed form" + tag);
      c.expect(tight_closure_sg(r.ideal) == r.ideal, "tightly closed" + tag);
      c.expect(star_core_crosscheck(I, 20, 100 + m), "crosscheck" + tag);
    }
  }
}

void basic_ideals(Check& c) {
  int sop_seen = 0;
  std::uint64_t seed = 0;
  const std::vector<RingPtr> rings = {diagonal_hypersurface(2, 1), diagonal_hypersurface(3, 1), e8_surface(11, 1)};
  while (sop_seen < 20 && seed < 200) {
    ++seed;
    const auto& R = rings[seed % rings.size()];
    const std::uint32_t d = 1 + static_cast<std::uint32_t>(seed % 3);
    auto gens = general_elements(maximal_ideal_power(R, d), 2, seed);
    IdealHandle I(R, gens);
    if (!is_sop_ideal(I)) continue;
    ++sop_seen;
    CoreOptions opts;
    opts.seed = seed;
    auto core = keep(core_by_intersection(I, CoreKind::core, opts));
    auto star = keep(core_by_intersection(I, CoreKind::star_core, opts));
    // Cores live in the localization, so compare against the m-primary component.
    const auto local = m_primary_component(I);
    c.expect(local && core.exact && ideal_equal(core.upper, *local), "core of sop ideal, seed " + std::to_string(seed));
    c.expect(local && star.exact && ideal_equal(star.upper, *local),
             "*-core of sop ideal, seed " + std::to_string(seed));
  }
  c.expect(sop_seen == 20, "20 random sop ideals found");

  auto cusp = semigroup_ring(2, 20, 2, 1);
  int non_principal = 0;
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    // Odd k: two generators of consecutive valuations, usually not principal.
    std::vector<SeriesElem> gens;
    const std::size_t v0 = 2 + rng() % 6;
    for (std::size_t v : k % 2 ? std::vector<std::size_t>{v0, v0 + 1} : std::vector<std::size_t>{v0}) {
      std::vector<Scalar> coeffs(v0 + 6, Scalar{0});
      coeffs[v] = cusp->field().one();
      for (std::size_t i = v + 1; i < coeffs.size(); ++i) coeffs[i] = cusp->field().from_random_word(rng());
      gens.emplace_back(cusp, coeffs);
    }
    SemigroupIdeal I(cusp, gens);
    const std::string tag = " (random cusp ideal " + std::to_string(k) + ": " + I.to_string() + ")";
    auto core = sampled_core_sg(I, SgCoreKind::core, 40, 1000 + k);
    auto star = sampled_core_sg(I, SgCoreKind::star_core, 40, 2000 + k);
    c.expect(core.ideal == star.ideal, "core = *-core" + tag);
    if (I.mu() == 1) c.expect(core.exact && star.exact && core.ideal == I, "principal ideal is its own core" + tag);
    non_principal += I.mu() > 1;
  }
  c.expect(non_principal >= 5, "enough non-principal cusp ideals (" + std::to_string(non_principal) + ")");
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TIGHTCORE_SESSIONS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void property_suites(Check& c) {
  // Groebner residuals on every basis produced above.
  std::size_t bases = 0;
  for (const auto& I : ledger.emitted) {
    const auto& G = I.basis().polys;
    for (std::size_t i = 0; i < G.size(); ++i) {
      for (std::size_t j = i + 1; j < G.size(); ++j) {
        if (!normal_form(s_polynomial(G[i], G[j]), I.basis()).is_zero()) {
          c.expect(false, "nonzero S-polynomial residual");
        }
      }
    }
    ++bases;
  }
  c.expect(bases > 50, "enough emitted bases audited");

  std::mt19937_64 rng(2024);
  const std::vector<RingPtr> poly_rings = {polynomial_ring(2, 1, {"x", "y"}), polynomial_ring(3, 1, {"x", "y", "z"}),
                                           polynomial_ring(5, 1, {"a", "b", "c"})};
  int oracle_ok = 0;
  for (int k = 0; k < 600; ++k) oracle_ok += oracle::check_intersection_and_colon(poly_rings[k % 3], rng);
  c.expect(oracle_ok == 600, "monomial oracle agreement " + std::to_string(oracle_ok) + "/600");

  int bracket_ok = 0, bracket_total = 0;
  const std::vector<RingPtr> bracket_rings = {polynomial_ring(2, 1, {"x", "y", "z"}), polynomial_ring(3, 1, {"x", "y"}),
                                              diagonal_hypersurface(2, 4), diagonal_hypersurface(3, 4)};
  for (int k = 0; k < 120; ++k) {
    const auto& R = bracket_rings[k % bracket_rings.size()];
    const std::uint64_t p = R->characteristic();
    std::vector<Poly> gens;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int g = 0; g < count; ++g) {
      Poly f = R->constant(R->field().zero());
      const int terms = 1 + static_cast<int>(rng() % 2);
      for (int t = 0; t < terms; ++t) {
        Monomial mono;
        // Exponents stay small enough that I^[p^2] fits under the degree cap.
        for (std::size_t v = 0; v < R->nvars(); ++v) mono.set(v, static_cast<std::uint16_t>(rng() % (p == 2 ? 3 : 2)));
        if (mono == Monomial::one()) mono.set(0, 1);
        f = f + Poly::monomial(R->ambient(), mono, R->field().from_random_word(rng() | 1));
      }
      gens.push_back(f);
    }
    IdealHandle I(R, gens);
    ++bracket_total;
    bracket_ok += ideal_equal(bracket_power(bracket_power(I, p), p), bracket_power(I, p * p)) &&
                  ideal_contains(ideal_power(I, static_cast<std::uint32_t>(p)), bracket_power(I, p));
  }
  c.expect(bracket_total >= 100 && bracket_ok == bracket_total,
           "bracket composition " + std::to_string(bracket_ok) + "/" + std::to_string(bracket_total));

  for (const auto& r : ledger.closures) {
    try {
      check_report(r);
    } catch (const std::exception& e) {
      c.expect(false, std::string("closure chain: ") + e.what());
    }
  }
  for (const auto& b : ledger.cores) {
    const auto local = m_primary_component(b.input);
    const bool chain = ideal_contains(local ? *local : b.input, b.upper) && (!b.lower || ideal_contains(b.upper, *b.lower)) &&
                       (!b.exact || (b.lower && ideal_equal(*b.lower, b.upper)));
    c.expect(chain, "core bracket chain (" + to_string(b.kind) + ", " + b.method + ")");
    if (b.exact && is_m_primary(b.input)) c.expect(is_m_primary(b.upper), "exact core keeps m-primariness");
  }
  c.expect(ledger.closures.size() >= 10 && ledger.cores.size() >= 40, "enough reports audited");

  for (const char* name : {"ex61_p2.session", "ex62_p11.session", "semigroup_n3.session"}) {
    const Session s = parse_session(slurp(name));
    const auto a = run_session(s, {.timing = false});
    const auto b = run_session(s, {.timing = false});
    c.expect(a.json == b.json && a.text == b.text && a.success, std::string("deterministic run of ") + name);
  }
  CoreOptions opts;
  opts.seed = 5;
  auto R = diagonal_hypersurface(2, 5);
  auto x = core_by_intersection(maximal_ideal_power(R, 2), CoreKind::core, opts);
  auto y = core_by_intersection(maximal_ideal_power(R, 2), CoreKind::core, opts);
  c.expect(x.upper.to_string() == y.upper.to_string() && x.trace == y.trace, "repeated core sampling is identical");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "diagonal quadric, p=2, three seeds", 60, diagonal_char_two},
      {2, "diagonal cubic, p=3", 120, diagonal_char_three},
      {3, "E8 surface, p=11 and p=13", 60, e8_examples},
      {4, "semigroup closed forms and crosscheck", 10, semigroup_closed_forms},
      {5, "basic-ideal fast paths", 30, basic_ideals},
      {6, "property suites", 600, property_suites},
  };
  bool all = true;
  for (const auto& cr : criteria) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.budget_s) check.failures.push_back("over the time budget");
    const bool ok = check.failures.empty();
    all = all && ok;
    std::cout << "criterion " << cr.id << ": " << (ok ? "PASS" : "FAIL") << "  " << cr.title << "  ("
              << static_cast<int>(secs * 1000) << " ms)\n";
    for (const auto& f : check.failures) std::cout << "    failed: " << f << '\n';
  }
  return all ? 0 : 1;
}
