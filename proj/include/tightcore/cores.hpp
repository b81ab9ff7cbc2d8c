#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tightcore/closures.hpp"

namespace tightcore {

enum class ReductionKind { integral, tight, frobenius };

std::string to_string(ReductionKind k);

/// Evidence that J is (or is not known to be) a reduction of I of the given kind.
struct ReductionCertificate {
  ReductionKind kind = ReductionKind::integral;
  IdealHandle J;
  IdealHandle I;
  bool certified = false;
  /// integral: least n with J I^n = I^(n+1) (after localizing at m).
  std::optional<std::uint32_t> reduction_number;
  /// tight/frobenius: minimal generators of I and their membership verdicts in J^cl.
  std::vector<Poly> checked;
  std::vector<MembershipVerdict> verdicts;
};

struct CoreOptions {
  std::uint64_t seed = 1;
  std::uint64_t q_max = 0;
  std::uint32_t n_max = 6;
  std::uint32_t max_samples = 40;
  std::uint32_t stall_window = 8;
  /// General tuples tried per size when searching for the *-spread.
  std::uint32_t spread_trials = 6;
};

/// Least n <= n_max with J I^n = I^(n+1) in the localization at m. DomainError unless J is inside I.
std::optional<std::uint32_t> reduction_number(const IdealHandle& J, const IdealHandle& I, std::uint32_t n_max = 6);

ReductionCertificate is_cl_reduction(const IdealHandle& J, const IdealHandle& I, ReductionKind kind,
                                     std::uint64_t q_max = 0, std::uint32_t n_max = 6);

/// `count` random combinations of the minimal generators of I, reproducible from `seed`.
std::vector<Poly> general_elements(const IdealHandle& I, std::size_t count, std::uint64_t seed);

/// Krull dimension of the fiber cone; dim R for m-primary ideals. DomainError unless I is inside m.
int analytic_spread(const IdealHandle& I);

struct SpreadReport {
  int analytic_spread = 0;
  /// Certified range for the *-spread; exact when they agree.
  int star_low = 0;
  int star_high = 0;
  bool exact = false;
  int height = 0;
  std::size_t mu = 0;
  /// cld = star - ht and cld_2 = mu - star, taken at star_low and star_high respectively.
  int deviation = 0;
  int second_deviation = 0;
  /// Generators of the witnessing minimal *-reduction when exact.
  std::vector<Poly> witness;
};

SpreadReport star_spread(const IdealHandle& I, const CoreOptions& opts = {});

enum class CoreKind { core, star_core, f_core };

std::string to_string(CoreKind k);

struct CoreBracket {
  CoreKind kind = CoreKind::core;
  IdealHandle input;
  std::optional<IdealHandle> lower;
  IdealHandle upper;
  bool exact = false;
  /// stall_window consecutive certified samples left the intersection unchanged.
  bool stable = false;
  std::uint32_t samples = 0;
  std::uint64_t seed = 0;
  /// Colength of the running intersection after each certified candidate.
  std::vector<std::size_t> trace;
  /// The certified reductions whose intersection is `upper`.
  std::vector<IdealHandle> reductions;
  std::string method;
};

/// Upper bound: intersection of certified (cl-)reductions, first the subsets of
/// I's canonical generators, then general samples. Lower bound: I for sop
/// ideals; tau times the certified lower bound of I^* for the *-core.
CoreBracket core_by_intersection(const IdealHandle& I, CoreKind kind, const CoreOptions& opts = {});

/// core(I) = J^(r+1) : I^r for a minimal reduction J with reduction number r < p,
/// confirmed against J^(r+2) : I^(r+1). PreconditionError if J is not a minimal
/// reduction within n_max or p <= r; ResourceError if the check disagrees.
IdealHandle core_colon_formula(const IdealHandle& I, const IdealHandle& J, std::uint32_t n_max = 6);

/// A minimal reduction found among generator subsets and general samples.
std::optional<IdealHandle> find_minimal_reduction(const IdealHandle& I, const CoreOptions& opts = {});

enum class CoreRelation { strict, equal, inconclusive };

std::string to_string(CoreRelation r);

struct CoreComparison {
  std::optional<IdealHandle> core;
  std::optional<IdealHandle> core_reduction;
  CoreBracket star;
  CoreBracket f;
  CoreRelation relation = CoreRelation::inconclusive;
  /// Containments between comparable bounds held (core <= *-core <= F-core).
  bool containments_hold = true;
  /// Every exact result is m-primary.
  bool radicals_agree = true;
  /// Exact results coincided for every seed.
  bool seeds_agree = true;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> notes;
};

CoreComparison compare_cores(const IdealHandle& I, const std::vector<std::uint64_t>& seeds,
                             const CoreOptions& opts = {});

}  // namespace tightcore
