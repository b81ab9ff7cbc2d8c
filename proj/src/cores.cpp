#include "tightcore/cores.hpp"

#include <algorithm>
#include <stdexcept>

#include "tightcore/catalog.hpp"
#include "tightcore/errors.hpp"

namespace tightcore {

namespace {

// Index subsets of {0..n-1} of size k in lexicographic order, at most `limit` of them.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k, std::size_t limit) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n || k == 0) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (out.size() < limit) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

constexpr std::size_t kSubsetLimit = 64;

// Candidate generator tuples of size s: subsets of the minimal generators, then general samples.
struct CandidateStream {
  const IdealHandle& I;
  std::size_t s;
  std::uint64_t seed;
  std::uint32_t max_samples;
  std::vector<Poly> mingens;
  std::vector<std::vector<std::size_t>> picks;
  std::size_t next_pick = 0;
  std::uint32_t next_sample = 0;

  CandidateStream(const IdealHandle& ideal, std::size_t size, std::uint64_t sd, std::uint32_t samples)
      : I(ideal), s(size), seed(sd), max_samples(samples) {
    mingens = minimal_generators(I).gens;
    picks = subsets(mingens.size(), s, kSubsetLimit);
  }

  bool in_subset_phase() const { return next_pick < picks.size(); }

  std::optional<std::vector<Poly>> next() {
    if (next_pick < picks.size()) {
      std::vector<Poly> gens;
      for (auto i : picks[next_pick]) gens.push_back(mingens[i]);
      ++next_pick;
      return gens;
    }
    if (next_sample < max_samples) {
      return general_elements(I, s, mix_seed(seed, 0x5a17 + next_sample++));
    }
    return std::nullopt;
  }
};

ReductionKind reduction_kind(CoreKind k) {
  switch (k) {
    case CoreKind::core:
      return ReductionKind::integral;
    case CoreKind::star_core:
      return ReductionKind::tight;
    default:
      return ReductionKind::frobenius;
  }
}

bool closure_hypotheses(const RingDesc& R) {
  return R.flags().gorenstein_isolated_singularity && R.known_test_ideal().has_value();
}

}  // namespace

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::integral:
      return "integral";
    case ReductionKind::tight:
      return "tight";
    default:
      return "frobenius";
  }
}

std::string to_string(CoreKind k) {
  switch (k) {
    case CoreKind::core:
      return "core";
    case CoreKind::star_core:
      return "star_core";
    default:
      return "f_core";
  }
}

std::string to_string(CoreRelation r) {
  switch (r) {
    case CoreRelation::strict:
      return "strict";
    case CoreRelation::equal:
      return "equal";
    default:
      return "inconclusive";
  }
}

std::optional<std::uint32_t> reduction_number(const IdealHandle& J, const IdealHandle& I, std::uint32_t n_max) {
  if (!ideal_contains(I, J)) throw DomainError("reduction_number: " + J.to_string() + " is not inside " + I.to_string());
  IdealHandle Jl = J, Il = I;
  if (auto Ic = m_primary_component(I)) {
    auto Jc = m_primary_component(J);
    if (!Jc) return std::nullopt;  // a reduction shares the radical of I
    Jl = *Jc;
    Il = *Ic;
  }
  IdealHandle power = unit_ideal(I.ring_ptr());
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    const IdealHandle next = ideal_product(power, Il);
    if (ideal_equal(ideal_product(Jl, power), next)) return n;
    power = next;
  }
  return std::nullopt;
}

ReductionCertificate is_cl_reduction(const IdealHandle& J, const IdealHandle& I, ReductionKind kind,
                                     std::uint64_t q_max, std::uint32_t n_max) {
  if (!ideal_contains(I, J)) throw DomainError("is_cl_reduction: " + J.to_string() + " is not inside " + I.to_string());
  ReductionCertificate cert;
  cert.kind = kind;
  cert.J = J;
  cert.I = I;
  if (kind == ReductionKind::integral) {
    cert.reduction_number = reduction_number(J, I, n_max);
    cert.certified = cert.reduction_number.has_value();
    return cert;
  }
  if (is_m_primary(I) && !is_m_primary(J)) return cert;

  std::optional<ClosureReport> frob;  // computed only when a direct witness is missing
  cert.certified = true;
  for (const auto& g : minimal_generators(I).gens) {
    MembershipVerdict v = kind == ReductionKind::tight ? tight_member(g, J, q_max) : frobenius_member(g, J, q_max);
    if (v.status == Verdict::undetermined && is_m_primary(J)) {
      if (!frob) frob = frobenius_closure(J, q_max);
      if (frob->lower.contains(g)) {
        v.status = Verdict::yes;
        v.method = "frobenius-closure";
        v.q_tested = frob->q_last;
      }
    }
    cert.checked.push_back(g);
    cert.verdicts.push_back(v);
    if (v.status != Verdict::yes) {
      cert.certified = false;
      break;
    }
  }
  return cert;
}

std::vector<Poly> general_elements(const IdealHandle& I, std::size_t count, std::uint64_t seed) {
  const auto gens = minimal_generators(I).gens;
  const RingDesc& R = I.ring();
  const Field& k = R.field();
  std::vector<Poly> out;
  std::uint64_t counter = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Poly f(R.ambient());
    for (const auto& g : gens) f += g.scaled(k.from_random_word(mix_seed(seed, counter++)));
    out.push_back(R.reduce(f));
  }
  return out;
}

int analytic_spread(const IdealHandle& I) {
  if (!inside_maximal(I)) throw DomainError("analytic_spread needs an ideal inside m");
  const RingDesc& R = I.ring();
  if (I.is_zero()) return 0;
  if (is_m_primary(I)) return R.dimension();

  // Fiber cone: R[It] / m R[It], presented through the kernel of T_j -> f_j t.
  const auto gens = minimal_generators(I).gens;
  const std::size_t n = R.nvars(), mu = gens.size();
  if (1 + mu + n > kMaxVars) throw ResourceError("analytic_spread: too many variables for the fiber cone presentation");
  std::vector<std::string> names{"_t"};
  for (std::size_t j = 0; j < mu; ++j) names.push_back("_T" + std::to_string(j));
  for (const auto& v : R.ambient()->variables()) names.push_back(v);
  auto big = PolyRing::make(R.field_ptr(), names, MonomialOrder::elimination(names.size(), {0}));
  std::vector<std::size_t> embed(n);
  for (std::size_t i = 0; i < n; ++i) embed[i] = 1 + mu + i;

  std::vector<Poly> rees;
  for (const auto& q : R.relations()) rees.push_back(q.remapped(big, embed));
  const Poly t = Poly::variable(big, 0);
  for (std::size_t j = 0; j < mu; ++j) rees.push_back(Poly::variable(big, 1 + j) - gens[j].remapped(big, embed) * t);
  GroebnerBasis G = buchberger(big, rees, R.groebner_options());

  std::vector<std::string> fiber_names(names.begin() + 1, names.end());
  auto fiber = PolyRing::make(R.field_ptr(), fiber_names);
  std::vector<std::size_t> drop_t(names.size());
  for (std::size_t i = 1; i < names.size(); ++i) drop_t[i] = i - 1;
  std::vector<Poly> cone;
  for (const auto& g : G.polys) {
    bool has_t = false;
    for (const auto& term : g.terms()) has_t = has_t || term.mono[0] != 0;
    if (!has_t) cone.push_back(g.remapped(fiber, drop_t));
  }
  for (std::size_t i = 0; i < n; ++i) cone.push_back(Poly::variable(fiber, mu + i));
  return krull_dimension(buchberger(fiber, cone, R.groebner_options()));
}

SpreadReport star_spread(const IdealHandle& I, const CoreOptions& opts) {
  SpreadReport out;
  out.analytic_spread = analytic_spread(I);
  out.mu = ideal_mu(I);
  out.height = ideal_height(I);
  out.star_low = out.analytic_spread;
  out.star_high = static_cast<int>(out.mu);
  const RingPtr& R = I.ring_ptr();
  for (int s = out.analytic_spread; s <= static_cast<int>(out.mu) && !out.exact; ++s) {
    CandidateStream stream(I, static_cast<std::size_t>(s), mix_seed(opts.seed, static_cast<std::uint64_t>(s)),
                           opts.spread_trials);
    while (auto gens = stream.next()) {
      IdealHandle J(R, *gens);
      if (!is_cl_reduction(J, I, ReductionKind::tight, opts.q_max, opts.n_max).certified) continue;
      if (star_independent(R, *gens, opts.q_max).independent == Verdict::yes) {
        out.star_low = out.star_high = s;
        out.exact = true;
        out.witness = *gens;
        break;
      }
    }
  }
  out.deviation = out.star_low - out.height;
  out.second_deviation = static_cast<int>(out.mu) - out.star_high;
  return out;
}

CoreBracket core_by_intersection(const IdealHandle& I, CoreKind kind, const CoreOptions& opts) {
  const IdealHandle L = require_m_primary(I, "core_by_intersection");
  const RingDesc& R = I.ring();
  CoreBracket out;
  out.kind = kind;
  out.input = I;
  out.seed = opts.seed;
  if (kind != CoreKind::core && !closure_hypotheses(R)) {
    throw PreconditionError(to_string(kind) + " needs a ring with the closure hypotheses and a known test ideal");
  }
  if (is_sop_ideal(I)) {
    out.lower = L;
    out.upper = L;
    out.exact = true;
    out.stable = true;
    out.method = "sop";
    return out;
  }

  std::size_t s = static_cast<std::size_t>(analytic_spread(I));
  if (kind != CoreKind::core) {
    const SpreadReport spread = star_spread(I, opts);
    s = static_cast<std::size_t>(spread.star_high);
  }
  const ReductionKind rk = reduction_kind(kind);

  IdealHandle upper = L;
  std::uint32_t stall = 0;
  bool general_phase = false;
  CandidateStream stream(I, s, opts.seed, opts.max_samples);
  for (;;) {
    const bool was_subset = stream.in_subset_phase();
    auto gens = stream.next();
    if (!gens) break;
    if (!was_subset) {
      if (!general_phase) stall = 0;
      general_phase = true;
      ++out.samples;
    }
    IdealHandle J(I.ring_ptr(), *gens);
    if (!is_cl_reduction(J, I, rk, opts.q_max, opts.n_max).certified) continue;
    const IdealHandle Jl = *m_primary_component(J);
    IdealHandle next = ideal_intersect(upper, Jl);
    const bool changed = !ideal_equal(next, upper);
    upper = next;
    out.reductions.push_back(Jl);
    out.trace.push_back(colength(upper).value_or(0));
    stall = changed ? 0 : stall + 1;
    if (general_phase && stall >= opts.stall_window) {
      out.stable = true;
      break;
    }
  }
  out.upper = upper;

  if (kind == CoreKind::star_core) {
    const IdealHandle tau = test_ideal_lookup(I.ring_ptr());
    out.lower = ideal_product(tau, tight_closure_bracket(I, opts.q_max).lower);
    if (!ideal_contains(out.upper, *out.lower)) {
      throw std::logic_error("*-core lower bound escapes the intersection of certified *-reductions");
    }
    out.exact = ideal_equal(*out.lower, out.upper);
  }
  out.method = "intersection";
  return out;
}

std::optional<IdealHandle> find_minimal_reduction(const IdealHandle& I, const CoreOptions& opts) {
  const std::size_t ell = static_cast<std::size_t>(analytic_spread(I));
  const std::uint32_t p = I.ring().characteristic();
  std::optional<IdealHandle> best;
  std::uint32_t best_r = 0;
  CandidateStream stream(I, ell, opts.seed, opts.max_samples);
  while (auto gens = stream.next()) {
    IdealHandle J(I.ring_ptr(), *gens);
    if (ideal_mu(J) != ell) continue;
    auto r = reduction_number(J, I, opts.n_max);
    if (!r) continue;
    if (!best || *r < best_r) {
      best = J;
      best_r = *r;
    }
    if (best_r < p) break;
  }
  return best;
}

IdealHandle core_colon_formula(const IdealHandle& I, const IdealHandle& J, std::uint32_t n_max) {
  const IdealHandle Il = require_m_primary(I, "core_colon_formula");
  const auto r = reduction_number(J, I, n_max);
  if (!r) throw PreconditionError("core_colon_formula: " + J.to_string() + " is not a reduction within n_max");
  if (static_cast<int>(ideal_mu(J)) != analytic_spread(I)) {
    throw PreconditionError("core_colon_formula: " + J.to_string() + " is not a minimal reduction");
  }
  if (I.ring().characteristic() <= *r) {
    throw PreconditionError("core_colon_formula needs characteristic > reduction number " + std::to_string(*r));
  }
  const IdealHandle Jl = *m_primary_component(J);
  const IdealHandle core = ideal_colon(ideal_power(Jl, *r + 1), ideal_power(Il, *r));
  const IdealHandle check = ideal_colon(ideal_power(Jl, *r + 2), ideal_power(Il, *r + 1));
  if (!ideal_equal(core, check)) {
    throw ResourceError("core_colon_formula unstable: " + core.to_string() + " vs " + check.to_string());
  }
  return core;
}

CoreComparison compare_cores(const IdealHandle& I, const std::vector<std::uint64_t>& seeds, const CoreOptions& opts) {
  if (seeds.empty()) throw DomainError("compare_cores needs at least one seed");
  CoreComparison out;
  out.seeds = seeds;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    CoreOptions o = opts;
    o.seed = seeds[i];
    std::optional<IdealHandle> core, reduction;
    if ((reduction = find_minimal_reduction(I, o))) {
      try {
        core = core_colon_formula(I, *reduction, o.n_max);
      } catch (const PreconditionError& e) {
        out.notes.push_back(std::string("seed ") + std::to_string(seeds[i]) + ": " + e.what());
      }
    } else {
      out.notes.push_back("seed " + std::to_string(seeds[i]) + ": no minimal reduction certified");
    }
    CoreBracket star = core_by_intersection(I, CoreKind::star_core, o);
    CoreBracket f = core_by_intersection(I, CoreKind::f_core, o);

    if (core) {
      out.containments_hold = out.containments_hold && ideal_contains(star.upper, *core) && ideal_contains(f.upper, *core);
      out.radicals_agree = out.radicals_agree && is_m_primary(*core);
    }
    if (star.lower) out.containments_hold = out.containments_hold && ideal_contains(f.upper, *star.lower);
    if (star.exact) out.radicals_agree = out.radicals_agree && is_m_primary(star.upper);

    if (i == 0) {
      out.core = core;
      out.core_reduction = reduction;
      out.star = star;
      out.f = f;
    } else {
      auto same = [](const std::optional<IdealHandle>& a, const std::optional<IdealHandle>& b) {
        return a.has_value() == b.has_value() && (!a || ideal_equal(*a, *b));
      };
      out.seeds_agree = out.seeds_agree && same(core, out.core) && star.exact == out.star.exact &&
                        (!star.exact || ideal_equal(star.upper, out.star.upper));
    }
  }

  if (out.core && out.star.exact) {
    out.relation = ideal_equal(*out.core, out.star.upper) ? CoreRelation::equal : CoreRelation::strict;
  } else if (out.core && out.star.lower && ideal_contains(*out.star.lower, *out.core) &&
             !ideal_equal(*out.star.lower, *out.core)) {
    out.relation = CoreRelation::strict;
  }
  return out;
}

}  // namespace tightcore
