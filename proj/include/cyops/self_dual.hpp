#pragma once

#include <optional>
#include <string>

#include "cyops/operator.hpp"
#include "cyops/roots.hpp"

namespace cyops {

struct SelfDualSearch {
  std::optional<RatFunc> alpha;  ///< L alpha = alpha L^v, numerator monic
  bool nonintegral_residue = false;
  std::string reason;
};

/// True iff L alpha = alpha L^v holds as an operator identity.
inline bool verify_self_dual(const DOperator& L, const RatFunc& alpha) {
  const DOperator a = DOperator::scalar(alpha);
  return L * a == a * dual(L);
}

/// Searches alpha with alpha'/alpha = -2 a_n/(n+1) for the monic form of L,
/// then checks the full identity.
inline SelfDualSearch find_self_dual_witness(const DOperator& L) {
  SelfDualSearch out;
  const DOperator m = L.monic();
  const long N = m.order();
  if (N < 1) {
    out.alpha = RatFunc(1);
    return out;
  }
  const RatFunc w = m[static_cast<std::size_t>(N - 1)] * RatFunc(make_rational(-2, N));
  LogDerivativeSolution sol = solve_log_derivative(w);
  if (!sol.alpha) {
    out.nonintegral_residue = sol.nonintegral_residue;
    out.reason = sol.reason;
    return out;
  }
  RatFunc alpha = *sol.alpha;
  alpha = alpha * RatFunc(1 / alpha.num().lead());
  if (!verify_self_dual(m, alpha)) {
    out.reason = "candidate alpha fails L alpha = alpha L^v";
    return out;
  }
  out.alpha = alpha;
  return out;
}

/// Witness or nothing; throws NonIntegralResidue when some residue of
/// -2 a_n/(n+1) is not an integer.
inline std::optional<RatFunc> self_dual_witness(const DOperator& L) {
  SelfDualSearch s = find_self_dual_witness(L);
  if (s.nonintegral_residue) throw Error(ErrorKind::NonIntegralResidue, s.reason);
  return s.alpha;
}

}  // namespace cyops
