#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tightcore/field.hpp"
#include "tightcore/poly.hpp"

namespace tightcore {

/// A numerical semigroup S in N_0, given by generators with gcd 1.
class SemigroupDesc {
 public:
  /// DomainError for an empty list, a zero generator, or gcd != 1.
  static SemigroupDesc from_generators(std::vector<std::uint32_t> gens);
  /// <n, n+1, ..., 2n-1>, i.e. {0} together with every integer >= n.
  static SemigroupDesc maximal_conductor(std::uint32_t n);

  const std::vector<std::uint32_t>& generators() const { return gens_; }
  const std::vector<std::uint32_t>& gaps() const { return gaps_; }
  /// Largest gap, -1 when S = N_0.
  int frobenius_number() const { return gaps_.empty() ? -1 : static_cast<int>(gaps_.back()); }
  /// Smallest c with every i >= c in S.
  std::uint32_t conductor() const { return conductor_; }
  /// Smallest positive element.
  std::uint32_t multiplicity() const { return multiplicity_; }
  bool contains(std::uint64_t i) const;
  /// S = {0} u {n, n+1, ...}: the conductor ideal is the maximal ideal.
  bool has_maximal_conductor() const { return conductor_ <= multiplicity_; }

  friend bool operator==(const SemigroupDesc& a, const SemigroupDesc& b) { return a.gens_ == b.gens_; }

 private:
  std::vector<std::uint32_t> gens_;
  std::vector<std::uint32_t> gaps_;
  std::uint32_t conductor_ = 0;
  std::uint32_t multiplicity_ = 1;
};

/// k[[t^s : s in S]] over a finite field.
class SemigroupRing {
 public:
  static std::shared_ptr<const SemigroupRing> make(FieldPtr field, SemigroupDesc S);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const SemigroupDesc& semigroup() const { return S_; }
  /// k[t], used for parsing and printing elements.
  const PolyRingPtr& t_ring() const { return t_ring_; }

 private:
  SemigroupRing(FieldPtr field, SemigroupDesc S);
  FieldPtr field_;
  SemigroupDesc S_;
  PolyRingPtr t_ring_;
};

using SgRingPtr = std::shared_ptr<const SemigroupRing>;

/// k[[t^n, ..., t^(2n-1)]] over GF(p^e).
SgRingPtr semigroup_ring(std::uint32_t p, std::uint32_t e, std::uint32_t n, std::uint64_t seed = 0);

/// An element of the semigroup ring with finitely many terms. Truncation
/// happens only inside ideal computations, at a working precision derived
/// from the valuations involved.
class SeriesElem {
 public:
  SeriesElem() = default;
  /// DomainError if some exponent with a nonzero coefficient lies outside S.
  SeriesElem(SgRingPtr ring, std::vector<Scalar> coeffs);
  static SeriesElem monomial(SgRingPtr ring, std::uint32_t exponent, Scalar c);
  static SeriesElem parse(const SgRingPtr& ring, std::string_view text);

  const SgRingPtr& ring_ptr() const { return ring_; }
  const SemigroupRing& ring() const { return *ring_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Exponent of the lowest term; DomainError for zero.
  std::uint32_t valuation() const;
  std::uint32_t degree() const { return coeffs_.empty() ? 0 : static_cast<std::uint32_t>(coeffs_.size() - 1); }
  Scalar coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar{0}; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  SeriesElem operator+(const SeriesElem& o) const;
  SeriesElem operator-(const SeriesElem& o) const;
  SeriesElem operator*(const SeriesElem& o) const;
  SeriesElem scaled(Scalar c) const;
  /// Terms of exponent < n.
  SeriesElem truncated(std::uint32_t n) const;
  bool operator==(const SeriesElem& o) const { return coeffs_ == o.coeffs_; }

  std::string to_string() const;

 private:
  void trim();
  SgRingPtr ring_;
  std::vector<Scalar> coeffs_;
};

/// Ideal of a semigroup ring. An ideal with lowest valuation m contains
/// t^j for every j >= m + c (c the conductor), so it is pinned down by its
/// image in k[t]/(t^(m+c)); that image, in reduced echelon form keyed by the
/// lowest exponent, is the canonical form.
class SemigroupIdeal {
 public:
  SemigroupIdeal() = default;
  /// `extra_precision` widens the working window; the canonical form does not depend on it.
  SemigroupIdeal(SgRingPtr ring, std::vector<SeriesElem> gens, std::uint32_t extra_precision = 0);
  static SemigroupIdeal parse(const SgRingPtr& ring, std::string_view text);

  const SgRingPtr& ring_ptr() const { return ring_; }
  const SemigroupRing& ring() const { return *ring_; }
  bool is_zero() const { return !order_; }
  bool is_unit() const { return order_ && *order_ == 0; }
  /// Lowest valuation of an element (nullopt for the zero ideal).
  std::optional<std::uint32_t> order() const { return order_; }
  /// m + c: every t^j with j >= cutoff lies in the ideal.
  std::uint32_t cutoff() const { return cutoff_; }
  const std::vector<SeriesElem>& input_generators() const { return input_; }

  bool contains(const SeriesElem& f) const;
  /// Basis of the image in k[t]/(t^n) for any n >= cutoff(), reduced echelon.
  std::vector<std::vector<Scalar>> window(std::uint32_t n) const;

  /// Canonical minimal generators (a basis of I/mI), ordered by valuation.
  std::vector<SeriesElem> minimal_generators() const;
  std::size_t mu() const { return minimal_generators().size(); }

  std::string to_string() const;
  friend bool operator==(const SemigroupIdeal& a, const SemigroupIdeal& b);

 private:
  SgRingPtr ring_;
  std::vector<SeriesElem> input_;
  std::optional<std::uint32_t> order_;
  std::uint32_t cutoff_ = 0;
  std::vector<std::vector<Scalar>> rows_;
};

SemigroupIdeal sg_maximal_ideal(const SgRingPtr& R);
/// (t^a, t^(a+1), ..., t^(a+n-1)) with n the multiplicity: everything of valuation >= a in S.
SemigroupIdeal sg_valuation_ideal(const SgRingPtr& R, std::uint32_t a);
SemigroupIdeal sg_sum(const SemigroupIdeal& I, const SemigroupIdeal& J);
SemigroupIdeal sg_product(const SemigroupIdeal& I, const SemigroupIdeal& J);
SemigroupIdeal sg_power(const SemigroupIdeal& I, std::uint32_t n);
SemigroupIdeal sg_intersect(const SemigroupIdeal& I, const SemigroupIdeal& J);
/// J inside I.
bool sg_contains(const SemigroupIdeal& I, const SemigroupIdeal& J);

/// The unique generator t^m + a_1 t^(m+1) + ... + a_(n-1) t^(m+n-1) of (f).
/// Needs a maximal-conductor semigroup (PreconditionError); DomainError for zero or unit f.
SemigroupIdeal canonical_principal(const SeriesElem& f);

/// I k[[t]] intersected with R: every exponent of S at or above the order of I.
SemigroupIdeal integral_closure_sg(const SemigroupIdeal& I);
/// Equals the integral closure in the maximal-conductor family; PreconditionError elsewhere.
SemigroupIdeal tight_closure_sg(const SemigroupIdeal& I);

struct SgCoreResult {
  SemigroupIdeal ideal;
  bool exact = false;
  bool tightly_closed = false;
  std::string method;
  /// Certified reductions sampled (sampling routes only).
  std::uint32_t samples = 0;
};

/// Closed form for tightly closed I = (t^m, ..., t^(m+n-1)): (t^(m+n), ..., t^(m+2n-1)).
/// Principal ideals are returned unchanged. PreconditionError when I is not
/// tightly closed, is zero, or the ring is outside the maximal-conductor family.
SgCoreResult star_core_sg(const SemigroupIdeal& I);

/// The conductor (t^c, ..., t^(c+n-1)), which is the test ideal.
SemigroupIdeal conductor_test_ideal(const SgRingPtr& R);

/// True iff intersecting `samples` random canonical principal reductions
/// t^m + a_1 t^(m+1) + ... of I reproduces star_core_sg(I).
bool star_core_crosscheck(const SemigroupIdeal& I, std::uint32_t samples, std::uint64_t seed);

enum class SgCoreKind { core, star_core };

/// Sampled core (reductions certified by f I^r = I^(r+1), r <= n_max) or
/// *-core (certified by I inside (f)^*) of any nonzero ideal: the
/// intersection of `samples` principal reductions generated by random
/// combinations of the minimal generators. Stable after `stall_window`
/// non-shrinking samples. Only principal ideals come back exact (they are
/// their own unique reduction); otherwise the result is an upper bound.
SgCoreResult sampled_core_sg(const SemigroupIdeal& I, SgCoreKind kind, std::uint32_t samples, std::uint64_t seed,
                             std::uint32_t stall_window = 6, std::uint32_t n_max = 6);

}  // namespace tightcore
