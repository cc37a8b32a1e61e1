#pragma once

#include <span>
#include <string>
#include <vector>

#include "ncs/algebra.hpp"
#include "ncs/scalar.hpp"

namespace ncs {

/// One summand of an ideal-membership certificate: coefficient * left *
/// generator[index] * right, with an exact scalar-fraction coefficient.
struct IdealCombinationTerm {
  Monomial left;
  int generator_index = 0;
  Monomial right;
  ScalarFraction coefficient;
};

enum class MembershipStatus {
  Member,           ///< certificate found and re-verified exactly
  NotFoundAtBound,  ///< no combination exists within the degree bound searched
};

struct MembershipCertificate {
  MembershipStatus status = MembershipStatus::NotFoundAtBound;
  int degree_bound = 0;
  std::vector<IdealCombinationTerm> combination;
  /// True iff the combination was multiplied back out and matched the target
  /// exactly (cross-multiplied, no floating point involved).
  bool verified = false;
};

/// True when the element commutes with every generator of its presentation.
[[nodiscard]] bool is_central(const AlgebraElement& element);

/// Decides membership of `target` in the two-sided ideal generated by
/// `generators`, searching sandwich words left * g * right whose nominal
/// degree (left + right + largest generator term) does not exceed
/// `degree_bound`.  Central generators are enumerated one-sidedly.  A Member
/// answer always carries an exactly re-verified certificate; NotFoundAtBound
/// is only a statement about the searched window, not a proof of exclusion.
[[nodiscard]] MembershipCertificate ideal_membership(const AlgebraElement& target,
                                                     std::span<const AlgebraElement> generators,
                                                     int degree_bound);

/// Convenience overload for a single generator.
[[nodiscard]] MembershipCertificate ideal_membership(const AlgebraElement& target,
                                                     const AlgebraElement& generator,
                                                     int degree_bound);

}  // namespace ncs
