#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tightcore/field.hpp"

namespace tightcore {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector; entries past the ring's variable count stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exps{};
  std::uint32_t degree = 0;

  static Monomial one() { return {}; }
  static Monomial variable(std::size_t i, std::uint16_t power = 1);

  std::uint16_t operator[](std::size_t i) const { return exps[i]; }
  void set(std::size_t i, std::uint16_t value);

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(*this, numerator).
  Monomial quotient_of(const Monomial& numerator) const;
  Monomial lcm(const Monomial& other) const;
  Monomial pow(std::uint32_t n) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
};

enum class OrderKind { lex, grevlex, block };

/// Monomial order on a fixed variable count. Variables are ranked by `priority`
/// (priority[0] is the most significant). For `block`, the first `block_size`
/// variables in priority order form an elimination block compared by grevlex
/// before the remaining variables (also grevlex).
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::size_t block_size = 0;
  std::vector<std::size_t> priority;

  static MonomialOrder grevlex(std::size_t nvars);
  static MonomialOrder lex(std::size_t nvars);
  /// Elimination order for the variables in `eliminated` (they become the leading block).
  static MonomialOrder elimination(std::size_t nvars, const std::vector<std::size_t>& eliminated);

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

/// Polynomial ring k[x_1..x_n] with a fixed monomial order. Immutable.
class PolyRing {
 public:
  PolyRing(FieldPtr field, std::vector<std::string> variables, MonomialOrder order);
  PolyRing(FieldPtr field, std::vector<std::string> variables);

  static std::shared_ptr<const PolyRing> make(FieldPtr field, std::vector<std::string> variables);
  static std::shared_ptr<const PolyRing> make(FieldPtr field, std::vector<std::string> variables,
                                              MonomialOrder order);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const MonomialOrder& order() const { return order_; }
  /// Index of a variable name, or -1.
  int index_of(const std::string& name) const;

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b); }

  bool same_as(const PolyRing& other) const;

 private:
  FieldPtr field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Polynomial in canonical form: terms strictly descending under the ring's
/// order, no zero coefficients. The zero polynomial has no terms.
class Poly {
 public:
  Poly() = default;
  explicit Poly(PolyRingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(PolyRingPtr ring, Scalar c);
  static Poly variable(PolyRingPtr ring, std::size_t i);
  static Poly monomial(PolyRingPtr ring, const Monomial& m, Scalar c);
  /// Sorts, merges duplicates and drops zeros.
  static Poly from_terms(PolyRingPtr ring, std::vector<Term> terms);

  const PolyRing& ring() const { return *ring_; }
  const PolyRingPtr& ring_ptr() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree == 0); }

  /// Requires nonzero.
  const Term& leading() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  Scalar leading_coeff() const { return terms_.front().coeff; }
  std::uint32_t total_degree() const;
  /// Lowest total degree of a term; 0 for the zero polynomial.
  std::uint32_t order_at_origin() const;
  /// Coefficient of the constant term.
  Scalar constant_term() const;
  bool is_homogeneous() const;

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& other) { return *this = *this + other; }
  Poly& operator-=(const Poly& other) { return *this = *this - other; }
  Poly& operator*=(const Poly& other) { return *this = *this * other; }

  Poly scaled(Scalar c) const;
  Poly mul_term(const Monomial& m, Scalar c) const;
  /// this - c*m*g, without materializing c*m*g.
  Poly sub_mul_term(const Monomial& m, Scalar c, const Poly& g) const;
  /// Leading coefficient 1 (zero stays zero).
  Poly monic() const;
  /// Same terms reinterpreted in another ring with the same field and variable count
  /// (used to change monomial order); re-sorted.
  Poly in_ring(PolyRingPtr target) const;
  /// Terms with a variable index remapped: new_index[i] gives the target position of variable i.
  Poly remapped(PolyRingPtr target, const std::vector<std::size_t>& new_index) const;

  bool operator==(const Poly& other) const;

 private:
  void check_ring(const Poly& other) const;

  PolyRingPtr ring_;
  std::vector<Term> terms_;
};

/// f^n by square-and-multiply; f^0 = 1.
Poly pow(const Poly& f, std::uint64_t n);

/// Applies the Frobenius map to coefficients and raises every monomial to the
/// q-th power; equals f^q in characteristic p.
Poly frobenius_power(const Poly& f, std::uint64_t q);

}  // namespace tightcore
