#pragma once

#include <vector>

#include "cyops/indicial.hpp"

namespace cyops {

/// Pullback along z -> lambda z^h: w^i P_i(theta_w) becomes
/// lambda^i z^(h i) P_i(theta / h). Returned normalized.
inline ThetaOperator pullback_monomial(const ThetaOperator& L, const Rational& lambda, unsigned h) {
  if (lambda == 0) throw Error(ErrorKind::InvalidArgument, "pullback by zero");
  if (h == 0) throw Error(ErrorKind::InvalidArgument, "pullback exponent must be positive");
  std::vector<Poly> s(h * (L.slices().size() - 1) + 1);
  Rational pw = 1;
  for (std::size_t i = 0; i < L.slices().size(); ++i, pw *= lambda)
    s[h * i] = L.slices()[i].scale_argument(Rational(1, h)) * pw;
  return ThetaOperator(std::move(s)).normalized();
}

/// Substitutes d -> d - u in the monic form. If L y = 0 then the result
/// annihilates f y for f'/f = u.
inline DOperator twist(const DOperator& L, const RatFunc& u) {
  DOperator m = L.monic();
  if (u.is_zero()) return m;
  DOperator step({-u, RatFunc(1)});
  DOperator power = DOperator::scalar(RatFunc(1));
  DOperator out;
  for (long i = 0; i <= m.order(); ++i) {
    out = out + m.coeffs()[static_cast<std::size_t>(i)] * power;
    power = step * power;
  }
  return out;
}

}  // namespace cyops
