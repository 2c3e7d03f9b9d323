#pragma once

#include <vector>

#include "cyops/frobenius.hpp"
#include "cyops/transforms.hpp"

namespace cyops {

namespace detail {

inline std::optional<ThetaOperator> kernel_operator(const RowEchelon& ech, std::size_t k, std::size_t d) {
  for (const auto& v : ech.kernel()) {
    std::vector<Poly> slices(d + 1);
    bool has_top = false;
    for (std::size_t i = 0; i <= d; ++i) {
      std::vector<Rational> c(v.begin() + static_cast<long>(i * (k + 1)), v.begin() + static_cast<long>((i + 1) * (k + 1)));
      if (c[k] != 0) has_top = true;
      slices[i] = Poly(std::move(c));
    }
    if (has_top) return ThetaOperator(std::move(slices));
  }
  return std::nullopt;
}

/// Solves for sum_{i<=d, t<=k} q_{i,t} z^i theta^t annihilating every series.
/// Equations are taken from low powers of z upwards; a candidate from a
/// partial system is accepted only after it annihilates the full inputs.
inline std::optional<ThetaOperator> annihilator_of_shape(const std::vector<std::vector<LogSeries>>& theta_powers,
                                                         std::size_t k, std::size_t d) {
  const std::size_t ncols = (d + 1) * (k + 1);
  long lo = 0, hi = 0;
  bool first = true;
  for (const auto& pw : theta_powers) {
    lo = first ? pw[0].shift() : std::min(lo, pw[0].shift());
    hi = first ? pw[0].precision() : std::max(hi, pw[0].precision());
    first = false;
  }
  std::size_t equations = 0;
  for (const auto& pw : theta_powers) equations += pw[0].depth() * static_cast<std::size_t>(pw[0].precision() - pw[0].shift());
  if (equations < ncols + 10)
    throw Error(ErrorKind::TruncationExhausted, "series too short to determine an operator of this size");

  auto verified = [&](const ThetaOperator& op) {
    for (const auto& pw : theta_powers)
      if (!apply(op, pw[0]).is_zero()) return false;
    return true;
  };
  RowEchelon ech(ncols);
  std::size_t used = 0, checkpoint = ncols + 16;
  for (long e = lo; e < hi; ++e) {
    for (const auto& pw : theta_powers) {
      const LogSeries& y = pw[0];
      if (e < y.shift() || e >= y.precision()) continue;
      for (std::size_t j = 0; j < y.depth(); ++j) {
        RationalVector row(ncols);
        bool nonzero = false;
        for (std::size_t i = 0; i <= d; ++i) {
          const long src = e - static_cast<long>(i);
          if (src < y.shift()) break;
          for (std::size_t t = 0; t <= k; ++t) {
            if (j >= pw[t].depth()) continue;
            const Rational& c = pw[t].parts()[j][static_cast<std::size_t>(src - pw[t].shift())];
            if (c != 0) {
              row[i * (k + 1) + t] = c;
              nonzero = true;
            }
          }
        }
        ++used;
        if (nonzero && ech.insert(std::move(row)) && ech.full()) return std::nullopt;
      }
    }
    if (used >= checkpoint) {
      checkpoint *= 2;
      auto op = kernel_operator(ech, k, d);
      if (!op) return std::nullopt;
      if (verified(*op)) return op;
    }
  }
  auto op = kernel_operator(ech, k, d);
  if (op && verified(*op)) return op;
  return std::nullopt;
}

}  // namespace detail

/// Lowest-order theta-form with z-degree <= max_coeff_deg annihilating every
/// input to its truncation, from the exact kernel of the coefficient system.
inline ThetaOperator min_theta_operator_of_series(const std::vector<LogSeries>& ys, std::size_t max_order,
                                                  std::size_t max_coeff_deg, std::size_t min_order = 1) {
  std::vector<std::vector<LogSeries>> powers;
  for (const auto& y : ys) {
    std::vector<LogSeries> pw{y};
    for (std::size_t t = 1; t <= max_order; ++t) pw.push_back(pw.back().theta());
    powers.push_back(std::move(pw));
  }
  for (std::size_t k = min_order; k <= max_order; ++k) {
    for (std::size_t d = 0; d <= max_coeff_deg; ++d) {
      auto op = detail::annihilator_of_shape(powers, k, d);
      if (!op) continue;
      ThetaOperator L = op->normalized();
      for (const auto& y : ys)
        if (!apply(L, y).is_zero())
          throw Error(ErrorKind::NoOperatorInBounds, "kernel operator failed re-verification");
      return L;
    }
  }
  throw Error(ErrorKind::NoOperatorInBounds, "no annihilating operator within the order and degree bounds");
}

inline DOperator min_operator_of_series(const std::vector<LogSeries>& ys, std::size_t max_order,
                                        std::size_t max_coeff_deg) {
  return to_d_form(min_theta_operator_of_series(ys, max_order, max_coeff_deg)).monic();
}

/// First point of 0, 1, -1, 1/2, -1/2, 2, ... where all monic coefficients are regular.
inline Rational regular_point(const DOperator& L) {
  const DOperator m = L.monic();
  for (long den = 1; den < 50; ++den)
    for (long num = 0; num <= 2 * den; ++num)
      for (long sgn : {1L, -1L}) {
        if (num == 0 && sgn < 0) continue;
        Rational p = make_rational(sgn * num, den);
        bool ok = true;
        for (const auto& a : m.coeffs())
          if (a.den().eval(p) == 0) ok = false;
        if (ok) return p;
      }
  throw Error(ErrorKind::InvalidArgument, "no regular point found");
}

/// Power series basis z^k + O(z^(n+1)), k = 0..n, at a regular point z = 0.
inline std::vector<Series> regular_basis(const ThetaOperator& L, std::size_t len) {
  const std::size_t N = static_cast<std::size_t>(L.order());
  auto sols = class_solutions(L, 0, N, len);
  std::vector<Series> out;
  for (const auto& s : sols) {
    if (s.g.log_degree() > 0) throw Error(ErrorKind::InvalidArgument, "logarithmic solution at a regular point");
    out.push_back(s.g.part(0));
  }
  // reduce to z^k + O(z^N) by elimination on the first N coefficients
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t piv = k;
    while (piv < N && out[piv][k] == 0) ++piv;
    if (piv == N) throw Error(ErrorKind::InvalidArgument, "degenerate local basis");
    std::swap(out[k], out[piv]);
    out[k] = out[k] * (1 / out[k][k]);
    for (std::size_t o = 0; o < N; ++o)
      if (o != k && out[o][k] != 0) out[o] = out[o] - out[k] * out[o][k];
  }
  return out;
}

/// Local basis z^lambda g_k at z = 0 when all exponents there lie in one
/// class lambda + Z; otherwise nothing.
inline std::optional<std::vector<LogSeries>> single_class_basis(const ThetaOperator& L, std::size_t len,
                                                                Rational& lambda) {
  IndicialData ind;
  try {
    ind = indicial(L, Point::at(0));
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!ind.all_rational()) return std::nullopt;
  auto ex = ind.exponents();
  for (const auto& e : ex)
    if (!is_integer(e - ex.front())) return std::nullopt;
  lambda = ex.front();
  std::size_t s = 0;
  while (L.slices()[s].is_zero()) ++s;
  ThetaOperator stripped(std::vector<Poly>(L.slices().begin() + static_cast<long>(s), L.slices().end()));
  std::vector<LogSeries> out;
  for (auto& sol : class_solutions(stripped, lambda, ex.size(), len)) out.push_back(sol.g);
  return out;
}

/// Sym^n of an order-2 operator: the minimal operator of the products
/// y_0^(n-k) y_1^k of local solutions. Solutions are taken at z = 0 when the
/// exponents there form one class mod Z, else at a regular point.
inline DOperator sym_power_order2(const DOperator& P, unsigned n) {
  if (P.order() != 2) throw Error(ErrorKind::InvalidArgument, "symmetric power expects an order-2 operator");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "symmetric power exponent must be positive");
  if (n == 1) return P.monic();
  const ThetaOperator at_zero = to_theta_form(P);
  Rational lambda = 0;
  const bool use_zero = single_class_basis(at_zero, 8, lambda).has_value();
  const Rational p0 = use_zero ? Rational(0) : regular_point(P);
  const ThetaOperator local = use_zero ? at_zero : to_theta_form(translate(P, p0));
  const bool mum = use_zero && mum_exponent(at_zero).has_value();
  for (std::size_t bound = 4;; bound *= 2) {
    // each coefficient index yields n + 1 equations at least
    const std::size_t len = 2 * bound + (bound + 1) * (n + 2) / (n + 1) + 40;
    std::vector<LogSeries> basis;
    if (mum) {
      Flag f = mum_flag(at_zero, len);
      lambda = f.mum_exponent;
      for (int k = 0; k < 2; ++k) basis.push_back(f.solutions[static_cast<std::size_t>(k)].shifted(-f.mum_exponent));
    } else if (use_zero) {
      basis = *single_class_basis(local, len, lambda);
    } else {
      for (auto& b : regular_basis(local, len)) basis.emplace_back(b);
    }
    // w_k = y_0^(n-k) y_1^k from cached powers
    std::vector<LogSeries> p0s{LogSeries(Series::one(len))}, p1s{LogSeries(Series::one(len))};
    for (unsigned i = 1; i <= n; ++i) {
      p0s.push_back(p0s.back() * basis[0]);
      p1s.push_back(p1s.back() * basis[1]);
    }
    std::vector<LogSeries> products;
    for (unsigned k = 0; k <= n; ++k) products.push_back(p0s[n - k] * p1s[k]);
    {
      std::vector<RationalVector> vs;
      for (const auto& w : products) vs.push_back(detail::flatten(w, n + 1, len));
      if (rank_of(vs, (n + 1) * len) < n + 1)
        throw Error(ErrorKind::DegenerateSymmetricPower, "products of solutions are linearly dependent");
    }
    try {
      ThetaOperator S = min_theta_operator_of_series(products, n + 1, bound, n + 1);
      // products carry the factor z^(n lambda) dropped from the basis
      S = detail::exponent_shift(S, -lambda * n);
      return translate(to_d_form(S), -p0).monic();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoOperatorInBounds || bound >= 64) throw;
    }
  }
}

/// Dimension of the span of the pairwise products of a basis of local solutions.
inline std::size_t sym_square_order(const ThetaOperator& L, std::size_t truncation = 40) {
  if (L.order() < 2) throw Error(ErrorKind::OrderTooSmall, "order must be at least 2");
  std::vector<LogSeries> sols;
  if (mum_exponent(L)) {
    Flag f = mum_flag(L, truncation);
    for (auto& y : f.solutions) sols.push_back(y.shifted(-f.mum_exponent));
  } else {
    const DOperator D = to_d_form(L);
    const Rational p0 = regular_point(D);
    for (auto& s : regular_basis(to_theta_form(translate(D, p0)), truncation)) sols.emplace_back(s);
  }
  const std::size_t N = sols.size();
  const std::size_t depth = 2 * N;
  std::vector<RationalVector> vs;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) vs.push_back(detail::flatten(sols[i] * sols[j], depth, truncation));
  return rank_of(vs, depth * truncation);
}

}  // namespace cyops
