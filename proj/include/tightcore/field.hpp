#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tightcore {

/// Element of GF(p^e), packed as the base-p integer sum c_i p^i of its
/// coefficient vector over Z/p. Meaningful only together with its Field.
struct Scalar {
  std::uint64_t v = 0;

  friend bool operator==(Scalar, Scalar) = default;
  friend auto operator<=>(Scalar, Scalar) = default;
};

/// The finite field GF(p^e), with the lexicographically first monic
/// irreducible modulus of degree e, plus named parameters specialized to
/// seeded random nonzero elements.
///
/// Instances are immutable after construction; share them through
/// std::shared_ptr<const Field>.
class Field {
 public:
  /// Builds GF(p^e). Throws DomainError unless p is prime, e >= 1 and p^e < 2^62.
  Field(std::uint32_t p, std::uint32_t e, std::uint64_t seed = 0,
        std::vector<std::string> parameter_names = {});

  static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t e, std::uint64_t seed = 0,
                                           std::vector<std::string> parameter_names = {});

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return e_; }
  std::uint64_t size() const { return q_; }
  std::uint64_t seed() const { return seed_; }

  /// Coefficients c_0..c_e of the monic modulus (c_e = 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  const std::vector<std::string>& parameter_names() const { return param_names_; }
  /// Specialized value of a named parameter, if declared.
  std::optional<Scalar> parameter(const std::string& name) const;

  Scalar zero() const { return {0}; }
  Scalar one() const { return {1}; }
  /// Residue class of the integer n (reduced mod p).
  Scalar from_int(std::int64_t n) const;
  /// Residue of X in GF(p)[X]/(modulus), printed as `a`. For e = 1 the
  /// modulus is X itself, so this is zero.
  Scalar generator() const;

  Scalar add(Scalar a, Scalar b) const;
  Scalar sub(Scalar a, Scalar b) const;
  Scalar neg(Scalar a) const;
  Scalar mul(Scalar a, Scalar b) const;
  /// Throws DomainError when b is zero.
  Scalar div(Scalar a, Scalar b) const;
  /// Throws DomainError when a is zero.
  Scalar inv(Scalar a) const;
  Scalar pow(Scalar a, std::uint64_t n) const;
  /// a^q for q a power of p (including q = 1); throws DomainError otherwise.
  Scalar frobenius(Scalar a, std::uint64_t q) const;

  bool is_zero(Scalar a) const { return a.v == 0; }
  bool is_valid(Scalar a) const { return a.v < q_; }

  /// Coefficient vector over Z/p, length e.
  std::vector<std::uint32_t> coefficients(Scalar a) const;
  Scalar from_coefficients(const std::vector<std::uint32_t>& c) const;

  /// Uniform element from a 64-bit random word (bias below 2^-40 for the sizes used here).
  Scalar from_random_word(std::uint64_t w) const { return {w % q_}; }

  /// Structural identity: equal (p, e, seed, parameter names).
  bool same_as(const Field& other) const;

 private:
  Scalar mul_slow(Scalar a, Scalar b) const;
  Scalar pow_slow(Scalar a, std::uint64_t n) const;
  void build_tables();

  std::uint32_t p_;
  std::uint32_t e_;
  std::uint64_t q_;
  std::uint64_t seed_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint64_t> pow_p_;  // p^i for i in [0, e]
  // Discrete log / antilog tables for fields up to kTableLimit elements.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::string> param_names_;
  std::map<std::string, Scalar> params_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// True when n is prime (deterministic trial division; n < 2^32).
bool is_prime(std::uint64_t n);

/// Smallest e with p^e >= bound.
std::uint32_t degree_for_size(std::uint32_t p, std::uint64_t bound);

/// SplitMix64 step; used to derive reproducible per-task seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter);

}  // namespace tightcore
