#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "cyops/indicial.hpp"
#include "cyops/linalg.hpp"

namespace cyops {

/// y_k = sum_j ln(z)^j/j! f_(k-j), k = 0..n, at a MUM point z = 0.
struct Flag {
  std::vector<LogSeries> solutions;
  long mum_exponent = 0;
  /// f_0..f_n; f_0 = z^r (1 + O(z)), f_k = z^r O(z) for k >= 1.
  std::vector<Series> f;
};

namespace detail {

/// Truncated series in epsilon with `len` terms.
using EpsSeries = std::vector<Rational>;

inline EpsSeries eps_mul(const EpsSeries& a, const EpsSeries& b) {
  const std::size_t n = a.size();
  EpsSeries r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline EpsSeries eps_inverse(const EpsSeries& a) {
  const std::size_t n = a.size();
  EpsSeries r(n);
  r[0] = 1 / a[0];
  for (std::size_t k = 1; k < n; ++k) {
    Rational s = 0;
    for (std::size_t j = 1; j <= k; ++j)
      if (a[j] != 0) s += a[j] * r[k - j];
    r[k] = -s * r[0];
  }
  return r;
}

/// P(x + eps) truncated to `len` terms.
inline EpsSeries eps_eval(const Poly& p, const Rational& x, std::size_t len) {
  Poly s = p.taylor_shift(x);
  EpsSeries r(len);
  for (std::size_t i = 0; i < len; ++i) r[i] = s[i];
  return r;
}

}  // namespace detail

/// Integer r with Ind_0(L) = c (T - r)^(n+1), if any.
inline std::optional<long> mum_exponent(const ThetaOperator& L) {
  const long N = L.order();
  if (N < 1) return std::nullopt;
  std::size_t s = 0;
  while (s < L.slices().size() && L.slices()[s].is_zero()) ++s;
  if (s == L.slices().size()) return std::nullopt;
  const Poly& p0 = L.slices()[s];
  if (p0.degree() != N) return std::nullopt;
  Poly m = p0.monic();
  Rational r = -m[static_cast<std::size_t>(N - 1)] / N;
  if (!is_integer(r)) return std::nullopt;
  if (!(m == Poly::linear(r).pow(static_cast<unsigned>(N)))) return std::nullopt;
  return r.get_num().get_si();
}

/// Canonical flag at the MUM point 0 with `truncation` coefficients per f_k,
/// by the epsilon-deformation of the Frobenius recursion.
inline Flag mum_flag(const ThetaOperator& L0, std::size_t truncation) {
  ThetaOperator L = L0;
  {
    std::size_t s = 0;
    while (s < L.slices().size() && L.slices()[s].is_zero()) ++s;
    L = ThetaOperator(std::vector<Poly>(L.slices().begin() + static_cast<long>(s), L.slices().end()));
  }
  auto r_opt = mum_exponent(L);
  if (!r_opt) throw Error(ErrorKind::NotMUM, "indicial polynomial at 0 is not (T - r)^(n+1) with integer r");
  const long r = *r_opt;
  const std::size_t N = static_cast<std::size_t>(L.order());
  const std::size_t deg = L.slices().size();
  std::vector<detail::EpsSeries> A(truncation, detail::EpsSeries(N));
  if (truncation) A[0][0] = 1;
  for (std::size_t m = 1; m < truncation; ++m) {
    detail::EpsSeries rhs(N);
    for (std::size_t i = 1; i < deg && i <= m; ++i) {
      if (L.slices()[i].is_zero()) continue;
      auto pe = detail::eps_eval(L.slices()[i], Rational(static_cast<long>(m - i) + r), N);
      auto t = detail::eps_mul(pe, A[m - i]);
      for (std::size_t k = 0; k < N; ++k) rhs[k] -= t[k];
    }
    auto p0 = detail::eps_eval(L.slices()[0], Rational(static_cast<long>(m) + r), N);
    A[m] = detail::eps_mul(rhs, detail::eps_inverse(p0));
  }
  Flag flag;
  flag.mum_exponent = r;
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<Rational> c(truncation);
    for (std::size_t m = 0; m < truncation; ++m) c[m] = A[m][k];
    flag.f.emplace_back(std::move(c), r);
  }
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<Series> parts;
    for (std::size_t j = 0; j <= k; ++j) parts.push_back(flag.f[k - j]);
    flag.solutions.emplace_back(std::move(parts));
  }
  return flag;
}

inline Flag mum_flag(const DOperator& L, std::size_t truncation) { return mum_flag(to_theta_form(L), truncation); }

/// Local solution z^exponent * g with g in Q[[z]][ln z].
struct LocalSolution {
  Rational exponent;
  LogSeries g;
};

struct ExponentClass {
  std::vector<Rational> exponents;  ///< ascending, with multiplicity
  std::vector<int> block_sizes;     ///< log-block (Jordan) sizes, descending
  std::vector<LocalSolution> solutions;
};

struct LocalStructure {
  Point point;
  IndicialData indicial;
  std::vector<ExponentClass> classes;
  bool has_logs() const {
    for (const auto& c : classes)
      for (int b : c.block_sizes)
        if (b > 1) return true;
    return false;
  }
};

namespace detail {

/// sum z^i P_i(T + lambda): the operator acting on g when y = z^lambda g.
inline ThetaOperator exponent_shift(const ThetaOperator& L, const Rational& lambda) {
  std::vector<Poly> s;
  for (const auto& p : L.slices()) s.push_back(p.taylor_shift(lambda));
  return ThetaOperator(std::move(s));
}

inline RationalVector flatten(const LogSeries& y, std::size_t depth, std::size_t len) {
  RationalVector v(depth * len);
  for (std::size_t j = 0; j < depth && j < y.depth(); ++j)
    for (std::size_t m = 0; m < len; ++m) v[j * len + m] = y.part(j).coeff(static_cast<long>(m));
  return v;
}

inline LogSeries unflatten(const RationalVector& v, std::size_t depth, std::size_t len) {
  std::vector<Series> parts;
  for (std::size_t j = 0; j < depth; ++j)
    parts.emplace_back(std::vector<Rational>(v.begin() + static_cast<long>(j * len), v.begin() + static_cast<long>((j + 1) * len)));
  return LogSeries(std::move(parts));
}

}  // namespace detail

/// Solutions z^lambda sum_j L_j g_j of a theta-form at z = 0 for one class of
/// exponents lambda0 + Z with total multiplicity K, found as the exact kernel
/// of the truncated coefficient system.
inline std::vector<LocalSolution> class_solutions(const ThetaOperator& L, const Rational& lambda0, std::size_t K,
                                                  std::size_t len) {
  const ThetaOperator S = detail::exponent_shift(L, lambda0);
  const std::size_t depth = K;
  const std::size_t ncols = depth * len;
  // image of each unknown basis vector L_j z^m under S, truncated at len
  std::vector<RationalVector> columns;
  for (std::size_t j = 0; j < depth; ++j)
    for (std::size_t m = 0; m < len; ++m) {
      std::vector<Series> parts(j + 1, Series::zero(len));
      parts[j][m] = 1;
      LogSeries img = apply(S, LogSeries(std::move(parts)));
      columns.push_back(detail::flatten(img, depth, len));
    }
  std::vector<RationalVector> rows(depth * len, RationalVector(ncols));
  for (std::size_t c = 0; c < ncols; ++c)
    for (std::size_t r = 0; r < depth * len; ++r) rows[r][c] = columns[c][r];
  auto ker = kernel_of(rows, ncols);
  std::vector<LocalSolution> out;
  for (auto& v : ker) out.push_back({lambda0, detail::unflatten(v, depth, len)});
  return out;
}

/// Exponents at p grouped by class mod Z, with log-block sizes from the
/// action of d/d(ln z) on the local solution space.
inline LocalStructure local_structure(const ThetaOperator& L, const Point& p, std::size_t truncation = 0) {
  LocalStructure out;
  out.point = p;
  out.indicial = indicial(L, p);
  if (!out.indicial.all_rational())
    throw Error(ErrorKind::IrrationalExponents,
                "indicial polynomial at " + p.to_string() + " has the irrational factor " +
                    out.indicial.residual_factor.to_string("T"));
  ThetaOperator loc = localize(L, p);
  {
    std::size_t s = 0;
    while (loc.slices()[s].is_zero()) ++s;
    loc = ThetaOperator(std::vector<Poly>(loc.slices().begin() + static_cast<long>(s), loc.slices().end()));
  }
  // classes keyed by the fractional part of the exponent
  std::map<Rational, std::vector<Rational>> classes;
  for (const auto& e : out.indicial.exponents()) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
    classes[e - Rational(fl)].push_back(e);
  }
  for (auto& [frac, exps] : classes) {
    std::sort(exps.begin(), exps.end());
    ExponentClass cls;
    cls.exponents = exps;
    const std::size_t K = exps.size();
    Rational spread = exps.back() - exps.front();
    std::size_t len = static_cast<std::size_t>(spread.get_num().get_si()) + K + 3;
    len = std::max(len, truncation);
    cls.solutions = class_solutions(loc, exps.front(), K, len);
    if (cls.solutions.size() != K)
      throw Error(ErrorKind::IrregularSingularity,
                  "local solution space at " + p.to_string() + " has unexpected dimension");
    // ranks of powers of the log shift give the block structure
    std::vector<std::size_t> ranks{K};
    std::vector<LogSeries> cur;
    for (const auto& s : cls.solutions) cur.push_back(s.g);
    while (ranks.back() > 0) {
      for (auto& y : cur) y = y.log_shift();
      std::vector<RationalVector> vs;
      for (const auto& y : cur) vs.push_back(detail::flatten(y, K, len));
      ranks.push_back(rank_of(vs, K * len));
    }
    // blocks of size >= k: ranks[k-1] - ranks[k]
    std::vector<int> at_least;
    for (std::size_t k = 1; k < ranks.size(); ++k) at_least.push_back(static_cast<int>(ranks[k - 1] - ranks[k]));
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      int exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
      for (int c = 0; c < exact; ++c) cls.block_sizes.push_back(static_cast<int>(k + 1));
    }
    std::sort(cls.block_sizes.rbegin(), cls.block_sizes.rend());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

}  // namespace cyops
