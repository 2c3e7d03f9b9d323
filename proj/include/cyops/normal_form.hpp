#pragma once

#include <optional>
#include <vector>

#include "cyops/frobenius.hpp"
#include "cyops/self_dual.hpp"

namespace cyops {

struct NormalFormData {
  std::vector<Series> alpha;  ///< alpha_1..alpha_n
  Series q;
  Series q_inverse;
  std::vector<Series> y_invariants;  ///< Y_1..Y_(n-2)
};

/// f_0..f_n of a flag with the z^r factor removed, so that f_0(0) = 1.
inline std::vector<Series> flag_series(const Flag& flag) {
  std::vector<Series> out;
  for (const auto& f : flag.f) out.push_back(f.shifted(-flag.mum_exponent));
  return out;
}

/// Structure series from flag coefficients F_0..F_n (the flag being
/// y_k = sum_j ln(z)^j/j! F_(k-j)): each stage divides by N_k(y_k) and applies theta.
inline std::vector<Series> structure_series(std::vector<Series> F) {
  const std::size_t n = F.size() - 1;
  std::vector<Series> alpha;
  for (std::size_t k = 0; k < n; ++k) {
    const Series inv = invert_unit(F[k].rebased(0, F[k].precision()));
    std::vector<Series> h(F.size());
    for (std::size_t t = k; t <= n; ++t) h[t] = F[t] * inv;
    std::vector<Series> next(F.size());
    for (std::size_t t = k + 1; t <= n; ++t) next[t] = h[t].theta() + h[t - 1];
    F = std::move(next);
    alpha.push_back(invert_unit(F[k + 1].rebased(0, F[k + 1].precision())));
  }
  return alpha;
}

inline std::vector<Series> structure_series(const ThetaOperator& L, std::size_t truncation) {
  return structure_series(flag_series(mum_flag(L, truncation)));
}

/// q = z exp(F_1/F_0).
inline Series q_coordinate(const std::vector<Series>& F) {
  if (F.size() < 2) throw Error(ErrorKind::OrderTooSmall, "special coordinate needs order at least 2");
  Series ratio = (F[1] * invert_unit(F[0].rebased(0, F[0].precision()))).rebased(0, F[1].precision());
  return exp_series(ratio).shifted(1);
}

inline Series q_coordinate(const ThetaOperator& L, std::size_t truncation) {
  return q_coordinate(flag_series(mum_flag(L, truncation)));
}

/// Y_i = (alpha_1 / alpha_(i+1)) o q^(-1), i = 1..n-2.
inline std::vector<Series> y_invariants(const std::vector<Series>& alpha, const Series& q_inverse) {
  std::vector<Series> out;
  if (alpha.size() < 3) return out;
  for (std::size_t i = 1; i + 1 < alpha.size(); ++i)
    out.push_back(compose(alpha[0] * invert_unit(alpha[i]), q_inverse));
  return out;
}

inline NormalFormData normal_form(const std::vector<Series>& F) {
  NormalFormData d;
  d.alpha = structure_series(F);
  d.q = q_coordinate(F);
  d.q_inverse = reverse(d.q);
  d.y_invariants = y_invariants(d.alpha, d.q_inverse);
  return d;
}

inline NormalFormData normal_form(const ThetaOperator& L, std::size_t truncation) {
  return normal_form(flag_series(mum_flag(L, truncation)));
}

inline std::vector<Series> y_invariants(const ThetaOperator& L, std::size_t truncation) {
  if (L.order() < 4) throw Error(ErrorKind::OrderTooSmall, "Y-invariants need order at least 4");
  return normal_form(L, truncation).y_invariants;
}

struct LambertExpansion {
  int ell = 0;
  std::vector<Rational> coefficients;  ///< N_1..N_D
};

/// Y = 1 + sum_d N_d d^ell z^d/(1 - z^d); c_m = sum_{d | m} N_d d^ell.
inline LambertExpansion lambert_coefficients(const Series& Y, int ell, std::size_t depth) {
  if (Y.coeff(0) != 1) throw Error(ErrorKind::InvalidArgument, "Lambert expansion needs constant term 1");
  LambertExpansion out;
  out.ell = ell;
  for (std::size_t m = 1; m <= depth; ++m) {
    Rational c = Y.coeff(static_cast<long>(m));
    for (std::size_t d = 1; d < m; ++d)
      if (m % d == 0) c -= out.coefficients[d - 1] * rational_pow(Rational(static_cast<long>(d)), static_cast<unsigned long>(ell));
    out.coefficients.push_back(c / rational_pow(Rational(static_cast<long>(m)), static_cast<unsigned long>(ell)));
  }
  return out;
}

/// 1 + sum_d N_d d^ell z^d/(1 - z^d) to absolute precision `precision`.
inline Series lambert_resum(const LambertExpansion& e, long precision) {
  Series s = Series::one(static_cast<std::size_t>(precision));
  for (std::size_t d = 1; d <= e.coefficients.size(); ++d) {
    Rational w = e.coefficients[d - 1] * rational_pow(Rational(static_cast<long>(d)), static_cast<unsigned long>(e.ell));
    for (std::size_t m = d; m < static_cast<std::size_t>(precision); m += d) s[m] += w;
  }
  return s;
}

/// The pulled-back series (alpha_(i+1)/alpha_1) o q^(-1), i = 1..n-1, that
/// make up the special local normal form.
inline std::vector<Series> special_normal_form(const NormalFormData& d) {
  std::vector<Series> out;
  for (std::size_t i = 1; i < d.alpha.size(); ++i)
    out.push_back(compose(d.alpha[i] * invert_unit(d.alpha[0]), d.q_inverse));
  return out;
}

inline bool special_normal_form_equal(const NormalFormData& a, const NormalFormData& b) {
  if (a.alpha.size() != b.alpha.size()) return false;
  auto sa = special_normal_form(a), sb = special_normal_form(b);
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (!sa[i].agrees_with(sb[i])) return false;
  return true;
}

inline bool special_normal_form_equal(const ThetaOperator& L1, const ThetaOperator& L2, std::size_t truncation) {
  for (const auto* L : {&L1, &L2})
    if (!find_self_dual_witness(to_d_form(*L)).alpha)
      throw Error(ErrorKind::NotSelfDual, "operator has no self-duality witness");
  return special_normal_form_equal(normal_form(L1, truncation), normal_form(L2, truncation));
}

/// Flag coefficients of the pulled-back flag y_k o psi for psi in z + z^2 Q[[z]]:
/// ln(psi) = ln z + l(z) regroups into F'_s = sum_b l^b/b! (F_(s-b) o psi).
inline std::vector<Series> pullback_flag(const std::vector<Series>& F, const Series& psi) {
  Series unit = psi.rebased(1, psi.precision()).shifted(-1);
  // l = ln(psi/z), from l' = u'/u
  Series du = unit.derivative().rebased(0, unit.precision() - 1);
  Series dl = du * invert_unit(unit);
  std::vector<Rational> lc(static_cast<std::size_t>(dl.precision()) + 1);
  for (std::size_t m = 0; m < dl.order(); ++m) lc[m + 1] = dl[m] / Rational(static_cast<long>(m + 1));
  Series l(lc);
  std::vector<Series> composed;
  for (const auto& f : F) composed.push_back(compose(f, psi));
  std::vector<Series> out;
  for (std::size_t s = 0; s < F.size(); ++s) {
    Series acc = composed[s];
    Series lp = Series::one(l.order());
    Rational fact = 1;
    for (std::size_t b = 1; b <= s; ++b) {
      lp = lp * l;
      fact *= static_cast<long>(b);
      acc = acc + lp * composed[s - b] * (1 / fact);
    }
    out.push_back(acc);
  }
  return out;
}

struct ProdYResult {
  bool holds = false;
  Rational c = 0;
};

/// Checks (z^n alpha alpha_1^n / y_0^2) o q^(-1) = c prod Y_i.
inline ProdYResult prody_check(const ThetaOperator& L, const RatFunc& alpha, std::size_t truncation) {
  Flag flag = mum_flag(L, truncation);
  const long n = L.order() - 1;
  NormalFormData d = normal_form(flag_series(flag));
  const long prec = static_cast<long>(truncation);
  // z^n alpha / y_0^2 with y_0 = z^r f_0
  Series a = Series::from_ratfunc(alpha * RatFunc(Poly::monomial(1, static_cast<std::size_t>(n))), prec);
  Series y0 = flag.f[0];
  Series lhs = divide(a, y0 * y0);
  lhs = lhs * power(d.alpha[0], static_cast<unsigned>(n));
  ProdYResult out;
  if (lhs.valuation() != 0) return out;
  lhs = compose(lhs.rebased(0, lhs.precision()), d.q_inverse);
  Series prod = Series::one(static_cast<std::size_t>(lhs.precision()));
  for (const auto& Y : d.y_invariants) prod = prod * Y;
  out.c = lhs[0];
  out.holds = lhs.agrees_with(prod * out.c);
  return out;
}

/// Applies theta alpha_n theta ... alpha_1 theta to y_k / y_0 for every flag member.
inline bool normal_form_annihilates_flag(const Flag& flag, const std::vector<Series>& alpha) {
  const Series inv0 = invert_unit(flag.f[0].shifted(-flag.mum_exponent));
  for (const auto& y : flag.solutions) {
    LogSeries u = inv0 * y.shifted(-flag.mum_exponent);
    u = u.theta();
    for (const auto& a : alpha) u = (a * u).theta();
    if (!u.is_zero()) return false;
  }
  return true;
}

}  // namespace cyops
