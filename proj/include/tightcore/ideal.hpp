#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tightcore/ring.hpp"

namespace tightcore {

/// Finitely generated ideal of a quotient ring R = S/Q, stored through the
/// reduced Groebner basis of its preimage in S. The canonical generators are
/// the basis elements that do not lie in Q.
///
/// Handles are immutable; derived data (mu, m-primariness, the m-primary
/// component) is filled at most once and shared between copies.
class IdealHandle {
 public:
  IdealHandle() = default;
  IdealHandle(RingPtr ring, const std::vector<Poly>& gens);

  const RingDesc& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<Poly>& generators() const { return gens_; }
  /// Reduced Groebner basis of gens + Q in the ambient ring.
  const GroebnerBasis& basis() const { return basis_; }

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return basis_.is_unit_ideal(); }
  bool contains(const Poly& f) const;

  std::string to_string() const;

  struct Derived;

 private:
  friend std::size_t ideal_mu(const IdealHandle&);
  friend bool is_m_primary(const IdealHandle&);
  friend std::optional<IdealHandle> m_primary_component(const IdealHandle&);
  friend bool is_m_primary_affine(const IdealHandle&);

  RingPtr ring_;
  std::vector<Poly> gens_;
  GroebnerBasis basis_;
  std::shared_ptr<Derived> derived_;
};

IdealHandle make_ideal(const RingPtr& ring, const std::vector<std::string>& gens);
IdealHandle maximal_ideal(const RingPtr& ring);
IdealHandle zero_ideal(const RingPtr& ring);
IdealHandle unit_ideal(const RingPtr& ring);
/// m^n, built directly from the degree-n monomials.
IdealHandle maximal_ideal_power(const RingPtr& ring, std::uint32_t n);

IdealHandle ideal_sum(const IdealHandle& I, const IdealHandle& J);
IdealHandle ideal_product(const IdealHandle& I, const IdealHandle& J);
/// I^0 is the unit ideal.
IdealHandle ideal_power(const IdealHandle& I, std::uint32_t n);
/// I^[q], generated by the q-th powers of I's generators. q must be a power of p;
/// ResourceError once q times a generator degree passes the degree cap.
IdealHandle bracket_power(const IdealHandle& I, std::uint64_t q);
IdealHandle ideal_intersect(const IdealHandle& I, const IdealHandle& J);
/// I : (f). f must be nonzero in R.
IdealHandle ideal_colon(const IdealHandle& I, const Poly& f);
/// I : J. Throws DomainError if J = 0.
IdealHandle ideal_colon(const IdealHandle& I, const IdealHandle& J);

bool ideal_contains(const IdealHandle& I, const IdealHandle& J);  // J ⊆ I
bool ideal_equal(const IdealHandle& I, const IdealHandle& J);

/// I ⊆ m, i.e. every generator vanishes at the origin.
bool inside_maximal(const IdealHandle& I);

struct MinimalGenerators {
  std::vector<Poly> gens;
  std::size_t mu = 0;
};

/// A subset of the canonical generators whose images form a basis of I/mI
/// (so it generates I after localizing at m). Throws DomainError unless I ⊆ m.
MinimalGenerators minimal_generators(const IdealHandle& I);
std::size_t ideal_mu(const IdealHandle& I);

/// Affine check: R/I finite-dimensional and every variable nilpotent modulo I.
bool is_m_primary_affine(const IdealHandle& I);
/// m-primary in the localization at the origin (affine check, then the
/// m-primary component search for local rings).
bool is_m_primary(const IdealHandle& I);
/// The contraction of I R_m when it is m-primary: I + m^N for the first N
/// with I + m^N = I + m^(N+1). std::nullopt when not m-primary (or the power
/// cap was hit).
std::optional<IdealHandle> m_primary_component(const IdealHandle& I);
/// m_primary_component or PreconditionError naming `what`.
IdealHandle require_m_primary(const IdealHandle& I, const std::string& what);
/// I + m^n.
IdealHandle truncate(const IdealHandle& I, std::uint32_t n);

/// Generated by a system of parameters: m-primary and mu(I) = dim R.
bool is_sop_ideal(const IdealHandle& I);

/// dim_k R/I when finite.
std::optional<std::size_t> colength(const IdealHandle& I);
/// Krull dimension of R/I (-1 for the unit ideal).
int quotient_dimension(const IdealHandle& I);
/// dim R - dim R/I (equals the height in the equidimensional catenary rings used here).
int ideal_height(const IdealHandle& I);

}  // namespace tightcore
