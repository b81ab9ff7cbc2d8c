#pragma once

#include <span>
#include <vector>

#include "tightcore/poly.hpp"

namespace tightcore {

struct GroebnerOptions {
  /// Any intermediate S-polynomial remainder above this total degree aborts with ResourceError.
  std::uint32_t degree_cap = 60;
};

/// Reduced Groebner basis: monic, minimal, inter-reduced, sorted ascending by
/// leading monomial under the ring's order.
struct GroebnerBasis {
  PolyRingPtr ring;
  std::vector<Poly> polys;
  bool reduced = true;

  bool is_unit_ideal() const { return polys.size() == 1 && polys.front().is_constant() && !polys.front().is_zero(); }
  std::vector<Monomial> leading_monomials() const;
};

/// Buchberger with the normal selection strategy and both of Buchberger's criteria.
/// The basis lives in `ring` (its order is used); all gens must be in a ring
/// with the same field and variable count.
GroebnerBasis buchberger(const PolyRingPtr& ring, std::span<const Poly> gens, const GroebnerOptions& opts = {});

/// Buchberger under an explicit order: the inputs are moved to a copy of their ring carrying `order`.
GroebnerBasis buchberger(std::span<const Poly> gens, const MonomialOrder& order, const GroebnerOptions& opts = {});

/// Full remainder of f under division by G. Throws DomainError on ring/order mismatch.
Poly normal_form(const Poly& f, const GroebnerBasis& G);
Poly normal_form(const Poly& f, std::span<const Poly> basis);

bool is_member(const Poly& f, const GroebnerBasis& G);

/// Contraction to the subring on `keep` (indices into the ring's variables). The
/// result stays in G's ring and order.
GroebnerBasis eliminate(const GroebnerBasis& G, const std::vector<std::size_t>& keep,
                        const GroebnerOptions& opts = {});

/// Dimension of k[x]/<G>: the largest variable subset S such that no leading
/// monomial of G involves only variables of S. -1 for the unit ideal.
int krull_dimension(const GroebnerBasis& G);

struct StandardMonomials {
  std::vector<Monomial> monomials;  // ascending under the ring's order
  bool complete = false;            // quotient is finite-dimensional and fully listed
};

/// Standard monomials of degree <= bound; for zero-dimensional ideals the full
/// list is returned regardless of bound and flagged complete.
StandardMonomials quotient_vspace_basis(const GroebnerBasis& G, std::uint32_t bound);

/// True iff the quotient by <G> is finite-dimensional.
bool is_zero_dimensional(const GroebnerBasis& G);

Poly s_polynomial(const Poly& f, const Poly& g);

}  // namespace tightcore
