#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tightcore/ideal.hpp"

namespace tightcore {

enum class Verdict { yes, no, undetermined };

std::string to_string(Verdict v);

/// Three-valued closure membership answer with a re-checkable certificate.
///
///  - yes via "containment": x in I.
///  - yes via "frobenius": x^witness_q in I^[witness_q].
///  - yes via "exact": x in the exactly known closure (colon of an sop ideal).
///  - no via "colon": x not in `bound` : tau, where `bound` contains I.
///  - undetermined: q in [1, q_tested] gave nothing and no colon bound excluded x.
struct MembershipVerdict {
  Verdict status = Verdict::undetermined;
  std::string method;
  std::uint64_t witness_q = 0;
  std::uint64_t q_tested = 0;
  std::optional<IdealHandle> bound;
  std::string note;
};

enum class ClosureKind { frobenius, tight };

std::string to_string(ClosureKind k);

struct ClosureReport {
  ClosureKind kind = ClosureKind::tight;
  IdealHandle input;
  IdealHandle lower;
  IdealHandle upper;
  bool exact = false;
  /// False when `upper` is only the stabilized lower bound (Frobenius closure
  /// without a proven ceiling).
  bool upper_certified = true;
  /// Two consecutive q levels added nothing (Frobenius search).
  bool stable = false;
  std::uint64_t q_first = 1;
  std::uint64_t q_last = 1;
  std::optional<IdealHandle> test_ideal;
  std::string method;
};

/// q_max = 0 selects the default p^6.
std::uint64_t resolve_q_max(const RingDesc& R, std::uint64_t q_max);

/// Tries x in I, then x^q in I^[q] for q = p, p^2, ... <= q_max. Never answers no.
/// A ResourceError from the degree cap ends the search early (recorded in q_tested).
MembershipVerdict frobenius_member(const Poly& x, const IdealHandle& I, std::uint64_t q_max = 0);

/// Certified lower bound for the Frobenius closure of an m-primary ideal:
/// standard monomials of the running bound are tested level by level and
/// certified ones are added until two consecutive levels add nothing.
ClosureReport frobenius_closure(const IdealHandle& I, std::uint64_t q_max = 0);

/// I^* = I : tau for sop ideals of rings flagged Gorenstein with an isolated singularity.
/// PreconditionError when the flag, the test ideal or the sop property is missing.
ClosureReport tight_closure_sop(const IdealHandle& I);

/// Two-sided bracket F-closure lower bound <= I^* <= I : tau for m-primary I.
/// Uses tight_closure_sop when it applies.
ClosureReport tight_closure_bracket(const IdealHandle& I, std::uint64_t q_max = 0);

/// Decides x in K^* as far as the certificates allow: containment, exact sop
/// closure, Frobenius witness, or exclusion by a colon upper bound.
MembershipVerdict tight_member(const Poly& x, const IdealHandle& K, std::uint64_t q_max = 0);

struct IndependenceReport {
  /// yes: every element is certified outside the closure of the others.
  /// no: some element is certified inside it.
  Verdict independent = Verdict::undetermined;
  std::vector<MembershipVerdict> per_element;
};

IndependenceReport star_independent(const RingPtr& R, const std::vector<Poly>& gens, std::uint64_t q_max = 0);

/// Re-runs the direct checks behind a certificate. For Frobenius witnesses it
/// also checks persistence at q*p when that stays under the degree cap.
bool verify_certificate(const MembershipVerdict& v, const Poly& x, const IdealHandle& I);

/// Throws std::logic_error unless input <= lower <= upper (and lower = upper when exact).
void check_report(const ClosureReport& r);

}  // namespace tightcore
