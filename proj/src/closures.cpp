#include "tightcore/closures.hpp"

#include <stdexcept>

#include "tightcore/catalog.hpp"
#include "tightcore/errors.hpp"

namespace tightcore {

namespace {

bool is_power_of(std::uint64_t q, std::uint64_t p) {
  if (q == 0) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

std::optional<IdealHandle> registered_test_ideal(const RingPtr& R) {
  if (!R->known_test_ideal()) return std::nullopt;
  return test_ideal_lookup(R);
}

bool sop_route_applies(const IdealHandle& I) {
  return I.ring().flags().gorenstein_isolated_singularity && I.ring().known_test_ideal() && is_sop_ideal(I);
}

std::uint32_t max_degree(const IdealHandle& I) {
  std::uint32_t d = 0;
  for (const auto& g : I.generators()) d = std::max(d, g.total_degree());
  return d;
}

// Smallest ideal of the form K + m^N (N bounded) whose colon by tau excludes x.
std::optional<IdealHandle> excluding_truncation(const Poly& x, const IdealHandle& K, const IdealHandle& tau) {
  const std::uint32_t start = x.order_at_origin() + 1;
  const std::uint32_t stop = std::min(K.ring().local_power_cap(), x.order_at_origin() + max_degree(tau) + 6);
  for (std::uint32_t n = start; n <= stop; ++n) {
    IdealHandle B = truncate(K, n);
    if (!ideal_colon(B, tau).contains(x)) return B;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    default:
      return "undetermined";
  }
}

std::string to_string(ClosureKind k) { return k == ClosureKind::frobenius ? "frobenius" : "tight"; }

std::uint64_t resolve_q_max(const RingDesc& R, std::uint64_t q_max) {
  const std::uint64_t p = R.characteristic();
  if (q_max == 0) {
    q_max = 1;
    for (int i = 0; i < 6; ++i) q_max *= p;
  }
  if (!is_power_of(q_max, p)) throw DomainError("q_max " + std::to_string(q_max) + " is not a power of p");
  return q_max;
}

MembershipVerdict frobenius_member(const Poly& x, const IdealHandle& I, std::uint64_t q_max) {
  const RingDesc& R = I.ring();
  q_max = resolve_q_max(R, q_max);
  const Poly xr = R.reduce(x);
  MembershipVerdict out;
  if (I.contains(xr)) {
    out.status = Verdict::yes;
    out.method = "containment";
    out.witness_q = 1;
    out.q_tested = 1;
    return out;
  }
  out.q_tested = 1;
  const std::uint64_t p = R.characteristic();
  for (std::uint64_t q = p; q <= q_max; q *= p) {
    try {
      if (bracket_power(I, q).contains(frobenius_power(xr, q))) {
        out.status = Verdict::yes;
        out.method = "frobenius";
        out.witness_q = q;
        out.q_tested = q;
        return out;
      }
    } catch (const ResourceError& e) {
      out.note = e.what();
      break;
    }
    out.q_tested = q;
  }
  out.method = "frobenius-range";
  return out;
}

ClosureReport frobenius_closure(const IdealHandle& I, std::uint64_t q_max) {
  const RingDesc& R = I.ring();
  q_max = resolve_q_max(R, q_max);
  auto component = m_primary_component(I);
  if (!component) throw DomainError("Frobenius closure is computed for m-primary ideals only; got " + I.to_string());
  const std::uint64_t p = R.characteristic();

  IdealHandle lower = *component;
  int quiet_levels = 0;
  std::uint64_t q_last = 1;
  std::string note;
  for (std::uint64_t q = p; q <= q_max && quiet_levels < 2; q *= p) {
    bool added = false;
    try {
      for (;;) {
        const IdealHandle bracket = bracket_power(lower, q);
        std::vector<Poly> found;
        for (const auto& m : quotient_vspace_basis(lower.basis(), 0).monomials) {
          if (m.degree == 0) continue;
          const Poly c = Poly::monomial(R.ambient(), m, R.field().one());
          if (bracket.contains(frobenius_power(c, q))) found.push_back(c);
        }
        if (found.empty()) break;
        lower = ideal_sum(lower, IdealHandle(I.ring_ptr(), found));
        added = true;
      }
    } catch (const ResourceError& e) {
      note = e.what();
      break;
    }
    q_last = q;
    quiet_levels = added ? 0 : quiet_levels + 1;
  }

  ClosureReport out;
  out.kind = ClosureKind::frobenius;
  out.input = I;
  out.lower = lower;
  out.upper = lower;
  out.stable = quiet_levels >= 2;
  out.exact = out.stable;
  out.upper_certified = false;
  out.q_first = p;
  out.q_last = q_last;
  out.method = note.empty() ? "frobenius-search" : "frobenius-search (" + note + ")";
  return out;
}

ClosureReport tight_closure_sop(const IdealHandle& I) {
  const RingDesc& R = I.ring();
  if (!R.flags().gorenstein_isolated_singularity) {
    throw PreconditionError("tight_closure_sop needs a Gorenstein ring with an isolated singularity");
  }
  if (!R.known_test_ideal()) throw PreconditionError("tight_closure_sop needs a known test ideal");
  if (!is_sop_ideal(I)) throw PreconditionError("tight_closure_sop needs an ideal generated by an sop; got " + I.to_string());
  const IdealHandle tau = test_ideal_lookup(I.ring_ptr());
  const IdealHandle closure = ideal_colon(*m_primary_component(I), tau);
  ClosureReport out;
  out.kind = ClosureKind::tight;
  out.input = I;
  out.lower = closure;
  out.upper = closure;
  out.exact = true;
  out.stable = true;
  out.test_ideal = tau;
  out.method = "sop-colon";
  return out;
}

ClosureReport tight_closure_bracket(const IdealHandle& I, std::uint64_t q_max) {
  if (sop_route_applies(I)) return tight_closure_sop(I);
  const IdealHandle L = require_m_primary(I, "tight_closure_bracket");
  auto tau = registered_test_ideal(I.ring_ptr());
  if (!tau) throw PreconditionError("tight_closure_bracket needs a known test ideal");
  ClosureReport F = frobenius_closure(I, q_max);
  ClosureReport out;
  out.kind = ClosureKind::tight;
  out.input = I;
  out.lower = F.lower;
  out.upper = ideal_colon(L, *tau);
  if (!ideal_contains(out.upper, out.lower)) {
    throw std::logic_error("certified Frobenius members escape I : tau for " + I.to_string() +
                           "; the parameter specialization is degenerate");
  }
  out.exact = ideal_equal(out.lower, out.upper);
  out.stable = F.stable;
  out.q_first = F.q_first;
  out.q_last = F.q_last;
  out.test_ideal = tau;
  out.method = "frobenius-lower/colon-upper";
  return out;
}

MembershipVerdict tight_member(const Poly& x, const IdealHandle& K, std::uint64_t q_max) {
  const RingPtr& R = K.ring_ptr();
  const Poly xr = R->reduce(x);
  MembershipVerdict out;
  if (K.contains(xr)) {
    out.status = Verdict::yes;
    out.method = "containment";
    out.witness_q = 1;
    out.q_tested = 1;
    return out;
  }
  auto tau = registered_test_ideal(R);
  if (tau && sop_route_applies(K)) {
    const IdealHandle L = *m_primary_component(K);
    out.status = ideal_colon(L, *tau).contains(xr) ? Verdict::yes : Verdict::no;
    out.method = out.status == Verdict::yes ? "exact" : "colon";
    out.bound = L;
    return out;
  }
  // A colon exclusion is definitive and cheap, so it runs before the Frobenius search.
  if (tau) {
    std::optional<IdealHandle> bound;
    if (auto L = m_primary_component(K)) {
      if (!ideal_colon(*L, *tau).contains(xr)) bound = *L;
    } else {
      bound = excluding_truncation(xr, K, *tau);
    }
    if (bound) {
      out.status = Verdict::no;
      out.method = "colon";
      out.bound = bound;
      return out;
    }
  }
  return frobenius_member(xr, K, q_max);
}

IndependenceReport star_independent(const RingPtr& R, const std::vector<Poly>& gens, std::uint64_t q_max) {
  IndependenceReport out;
  bool all_no = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j != i) others.push_back(gens[j]);
    }
    auto v = tight_member(gens[i], IdealHandle(R, others), q_max);
    if (v.status == Verdict::yes) out.independent = Verdict::no;
    all_no = all_no && v.status == Verdict::no;
    out.per_element.push_back(std::move(v));
  }
  if (out.independent != Verdict::no && all_no) out.independent = Verdict::yes;
  return out;
}

bool verify_certificate(const MembershipVerdict& v, const Poly& x, const IdealHandle& I) {
  const RingDesc& R = I.ring();
  const Poly xr = R.reduce(x);
  switch (v.status) {
    case Verdict::undetermined:
      return true;
    case Verdict::yes: {
      if (v.method == "containment") return I.contains(xr);
      if (v.method == "exact") {
        return v.bound && ideal_contains(*v.bound, I) && is_sop_ideal(I) &&
               ideal_colon(*v.bound, test_ideal_lookup(I.ring_ptr())).contains(xr);
      }
      if (v.method != "frobenius" || v.witness_q < 2) return false;
      if (!bracket_power(I, v.witness_q).contains(frobenius_power(xr, v.witness_q))) return false;
      try {
        const std::uint64_t next = v.witness_q * R.characteristic();
        return bracket_power(I, next).contains(frobenius_power(xr, next));
      } catch (const ResourceError&) {
        return true;
      }
    }
    case Verdict::no: {
      if (v.method != "colon" || !v.bound) return false;
      return ideal_contains(*v.bound, I) && !ideal_colon(*v.bound, test_ideal_lookup(I.ring_ptr())).contains(xr);
    }
  }
  return false;
}

void check_report(const ClosureReport& r) {
  if (!ideal_contains(r.lower, r.input)) throw std::logic_error("closure report: input not inside lower bound");
  if (!ideal_contains(r.upper, r.lower)) throw std::logic_error("closure report: lower bound not inside upper bound");
  if (r.exact && !ideal_equal(r.lower, r.upper)) throw std::logic_error("closure report: exact but bounds differ");
}

}  // namespace tightcore
