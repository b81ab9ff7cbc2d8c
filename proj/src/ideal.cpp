#include "tightcore/ideal.hpp"

#include <algorithm>

#include "tightcore/errors.hpp"
#include "tightcore/linear_basis.hpp"
#include "tightcore/poly_io.hpp"

namespace tightcore {

struct IdealHandle::Derived {
  std::once_flag mu_once;
  std::size_t mu = 0;
  std::once_flag affine_once;
  bool affine_m_primary = false;
  std::once_flag component_once;
  std::optional<IdealHandle> component;
};

namespace {

void check_same(const IdealHandle& I, const IdealHandle& J) {
  if (!I.ring().same_as(J.ring())) throw DomainError("ideals belong to different rings");
}

std::vector<Poly> with_relations(const IdealHandle& I) { return I.basis().polys; }

// Exact quotient g / f in the ambient polynomial ring.
Poly divide_exact(const Poly& g, const Poly& f) {
  const Field& k = f.ring().field();
  std::vector<Term> quotient;
  Poly r = g;
  while (!r.is_zero()) {
    if (!f.leading_monomial().divides(r.leading_monomial())) {
      throw std::logic_error("divide_exact: " + format_poly(f) + " does not divide " + format_poly(g));
    }
    const Monomial m = f.leading_monomial().quotient_of(r.leading_monomial());
    const Scalar c = k.div(r.leading_coeff(), f.leading_coeff());
    quotient.push_back({m, c});
    r = r.sub_mul_term(m, c, f);
  }
  return Poly::from_terms(f.ring_ptr(), std::move(quotient));
}

// (A) ∩ (B) in the ambient polynomial ring, via t*A + (1-t)*B eliminating t.
std::vector<Poly> intersect_in_ambient(const RingDesc& R, const std::vector<Poly>& A, const std::vector<Poly>& B) {
  const PolyRing& S = *R.ambient();
  const std::size_t n = S.nvars();
  if (n + 1 > kMaxVars) throw ResourceError("no room for the elimination variable");
  auto vars = S.variables();
  vars.push_back("_t");
  auto T = PolyRing::make(S.field_ptr(), vars, MonomialOrder::elimination(n + 1, {n}));
  std::vector<std::size_t> embed(n);
  for (std::size_t i = 0; i < n; ++i) embed[i] = i;

  const Poly t = Poly::variable(T, n);
  const Poly one_minus_t = Poly::constant(T, S.field().one()) - t;
  std::vector<Poly> gens;
  for (const auto& a : A) gens.push_back(t * a.remapped(T, embed));
  for (const auto& b : B) gens.push_back(one_minus_t * b.remapped(T, embed));
  GroebnerBasis G = buchberger(T, gens, R.groebner_options());

  std::vector<Poly> out;
  for (const auto& g : G.polys) {
    bool has_t = false;
    for (const auto& term : g.terms()) {
      if (term.mono[n] != 0) {
        has_t = true;
        break;
      }
    }
    if (!has_t) out.push_back(g.remapped(R.ambient(), embed));
  }
  return out;
}

}  // namespace

IdealHandle::IdealHandle(RingPtr ring, const std::vector<Poly>& gens)
    : ring_(std::move(ring)), derived_(std::make_shared<Derived>()) {
  std::vector<Poly> all = ring_->relations();
  for (const auto& g : gens) {
    if (!g.ring().same_as(*ring_->ambient())) throw DomainError("generator lives in a different ring");
    all.push_back(g.ring_ptr() == ring_->ambient() ? g : g.in_ring(ring_->ambient()));
  }
  basis_ = buchberger(ring_->ambient(), all, ring_->groebner_options());
  for (const auto& g : basis_.polys) {
    if (!ring_->reduce(g).is_zero()) gens_.push_back(g);
  }
}

bool IdealHandle::contains(const Poly& f) const { return is_member(f, basis_); }

std::string IdealHandle::to_string() const {
  if (gens_.empty()) return "<0>";
  std::string out = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_poly(gens_[i]);
  }
  return out + ">";
}

IdealHandle make_ideal(const RingPtr& ring, const std::vector<std::string>& gens) {
  std::vector<Poly> polys;
  for (const auto& g : gens) polys.push_back(ring->parse(g));
  return IdealHandle(ring, polys);
}

IdealHandle maximal_ideal(const RingPtr& ring) {
  std::vector<Poly> gens;
  for (std::size_t i = 0; i < ring->nvars(); ++i) gens.push_back(ring->variable(i));
  return IdealHandle(ring, gens);
}

IdealHandle zero_ideal(const RingPtr& ring) { return IdealHandle(ring, {}); }

IdealHandle unit_ideal(const RingPtr& ring) { return IdealHandle(ring, {ring->constant(ring->field().one())}); }

IdealHandle maximal_ideal_power(const RingPtr& ring, std::uint32_t n) {
  if (n == 0) return unit_ideal(ring);
  const std::size_t nv = ring->nvars();
  std::vector<Poly> gens;
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t var, std::uint32_t left) -> void {
    if (var + 1 == nv) {
      cur.set(var, static_cast<std::uint16_t>(left));
      gens.push_back(Poly::monomial(ring->ambient(), cur, ring->field().one()));
      cur.set(var, 0);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      cur.set(var, static_cast<std::uint16_t>(e));
      self(self, var + 1, left - e);
    }
    cur.set(var, 0);
  };
  rec(rec, 0, n);
  return IdealHandle(ring, gens);
}

IdealHandle ideal_sum(const IdealHandle& I, const IdealHandle& J) {
  check_same(I, J);
  std::vector<Poly> gens = I.generators();
  gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  return IdealHandle(I.ring_ptr(), gens);
}

IdealHandle ideal_product(const IdealHandle& I, const IdealHandle& J) {
  check_same(I, J);
  std::vector<Poly> gens;
  for (const auto& a : I.generators()) {
    for (const auto& b : J.generators()) gens.push_back(I.ring().reduce(a * b));
  }
  return IdealHandle(I.ring_ptr(), gens);
}

IdealHandle ideal_power(const IdealHandle& I, std::uint32_t n) {
  IdealHandle acc = unit_ideal(I.ring_ptr());
  for (std::uint32_t i = 0; i < n; ++i) acc = i == 0 ? I : ideal_product(acc, I);
  return acc;
}

IdealHandle bracket_power(const IdealHandle& I, std::uint64_t q) {
  const std::uint64_t p = I.ring().characteristic();
  std::uint64_t r = q;
  while (r > 1 && r % p == 0) r /= p;
  if (q == 0 || r != 1) throw DomainError("bracket power exponent " + std::to_string(q) + " is not a power of p");
  if (q == 1) return I;
  std::vector<Poly> gens;
  for (const auto& g : I.generators()) {
    if (q * g.total_degree() > I.ring().degree_cap()) {
      throw ResourceError("bracket power " + std::to_string(q) + " exceeds the degree cap of " +
                          std::to_string(I.ring().degree_cap()));
    }
    gens.push_back(frobenius_power(g, q));
  }
  return IdealHandle(I.ring_ptr(), gens);
}

IdealHandle ideal_intersect(const IdealHandle& I, const IdealHandle& J) {
  check_same(I, J);
  if (I.is_unit()) return J;
  if (J.is_unit()) return I;
  if (I.is_zero() || J.is_zero()) return zero_ideal(I.ring_ptr());
  if (ideal_contains(J, I)) return I;
  if (ideal_contains(I, J)) return J;
  return IdealHandle(I.ring_ptr(), intersect_in_ambient(I.ring(), with_relations(I), with_relations(J)));
}

IdealHandle ideal_colon(const IdealHandle& I, const Poly& f) {
  const Poly fr = I.ring().reduce(f);
  if (fr.is_zero()) throw DomainError("colon by an element that is zero in the ring");
  if (I.contains(fr)) return unit_ideal(I.ring_ptr());
  std::vector<Poly> gens;
  for (const auto& g : intersect_in_ambient(I.ring(), with_relations(I), {fr})) gens.push_back(divide_exact(g, fr));
  return IdealHandle(I.ring_ptr(), gens);
}

IdealHandle ideal_colon(const IdealHandle& I, const IdealHandle& J) {
  check_same(I, J);
  if (J.is_zero()) throw DomainError("colon by the zero ideal");
  std::optional<IdealHandle> acc;
  for (const auto& g : J.generators()) {
    IdealHandle c = ideal_colon(I, g);
    acc = acc ? ideal_intersect(*acc, c) : c;
    if (ideal_equal(*acc, I)) break;
  }
  return *acc;
}

bool ideal_contains(const IdealHandle& I, const IdealHandle& J) {
  check_same(I, J);
  for (const auto& g : J.generators()) {
    if (!I.contains(g)) return false;
  }
  return true;
}

bool ideal_equal(const IdealHandle& I, const IdealHandle& J) { return ideal_contains(I, J) && ideal_contains(J, I); }

bool inside_maximal(const IdealHandle& I) {
  if (I.is_unit()) return false;
  for (const auto& g : I.generators()) {
    if (g.constant_term().v != 0) return false;
  }
  return true;
}

std::size_t ideal_mu(const IdealHandle& I) {
  std::call_once(I.derived_->mu_once, [&] { I.derived_->mu = minimal_generators(I).mu; });
  return I.derived_->mu;
}

MinimalGenerators minimal_generators(const IdealHandle& I) {
  if (!inside_maximal(I)) throw DomainError("minimal generators are defined for ideals inside m");
  MinimalGenerators out;
  if (I.is_zero()) return out;
  const IdealHandle mI = ideal_product(maximal_ideal(I.ring_ptr()), I);
  LinearBasis span;
  for (const auto& g : I.generators()) {
    if (span.insert(normal_form(g, mI.basis()))) out.gens.push_back(g);
  }
  out.mu = out.gens.size();
  return out;
}

bool is_m_primary_affine(const IdealHandle& I) {
  std::call_once(I.derived_->affine_once, [&] {
    bool result = false;
    if (inside_maximal(I) && is_zero_dimensional(I.basis())) {
      const auto D = quotient_vspace_basis(I.basis(), 0).monomials.size();
      result = true;
      for (std::size_t i = 0; i < I.ring().nvars() && result; ++i) {
        const Poly power = Poly::monomial(I.ring().ambient(), Monomial::variable(i, static_cast<std::uint16_t>(D)),
                                          I.ring().field().one());
        result = I.contains(power);
      }
    }
    I.derived_->affine_m_primary = result;
  });
  return I.derived_->affine_m_primary;
}

IdealHandle truncate(const IdealHandle& I, std::uint32_t n) {
  return ideal_sum(I, maximal_ideal_power(I.ring_ptr(), n));
}

std::optional<IdealHandle> m_primary_component(const IdealHandle& I) {
  std::call_once(I.derived_->component_once, [&] {
    if (!inside_maximal(I)) return;
    if (is_m_primary_affine(I)) {
      I.derived_->component = I;
      return;
    }
    if (!I.ring().flags().local) return;
    if (quotient_dimension(I) > 0) {
      // The origin is an isolated point of V(I) iff I : m^infinity leaves m.
      const IdealHandle m = maximal_ideal(I.ring_ptr());
      IdealHandle sat = I;
      for (;;) {
        IdealHandle next = ideal_colon(sat, m);
        if (ideal_equal(next, sat)) break;
        sat = next;
      }
      if (inside_maximal(sat)) return;
    }
    std::optional<std::size_t> prev;
    std::optional<IdealHandle> prev_ideal;
    for (std::uint32_t n = 1; n <= I.ring().local_power_cap(); ++n) {
      IdealHandle J = truncate(I, n);
      const auto c = colength(J);
      if (prev && c && *c == *prev) {
        I.derived_->component = *prev_ideal;
        return;
      }
      prev = c;
      prev_ideal = J;
    }
  });
  return I.derived_->component;
}

bool is_m_primary(const IdealHandle& I) { return m_primary_component(I).has_value(); }

IdealHandle require_m_primary(const IdealHandle& I, const std::string& what) {
  auto c = m_primary_component(I);
  if (!c) throw PreconditionError(what + " requires an m-primary ideal; got " + I.to_string());
  return *c;
}

bool is_sop_ideal(const IdealHandle& I) {
  auto c = m_primary_component(I);
  if (!c) return false;
  return static_cast<int>(ideal_mu(*c)) == I.ring().dimension();
}

std::optional<std::size_t> colength(const IdealHandle& I) {
  auto sm = quotient_vspace_basis(I.basis(), 0);
  if (!sm.complete) return std::nullopt;
  return sm.monomials.size();
}

int quotient_dimension(const IdealHandle& I) {
  if (I.basis().polys.empty()) return static_cast<int>(I.ring().nvars());
  return krull_dimension(I.basis());
}

int ideal_height(const IdealHandle& I) {
  if (is_m_primary(I)) return I.ring().dimension();
  return I.ring().dimension() - quotient_dimension(I);
}

}  // namespace tightcore
