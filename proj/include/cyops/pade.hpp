#pragma once

#include <vector>

#include "cyops/linalg.hpp"
#include "cyops/series.hpp"

namespace cyops {

/// Rational function A/B with deg A <= max_num_deg, deg B <= max_den_deg whose
/// expansion agrees with f on every known coefficient.
inline RatFunc pade_reconstruct(const Series& f, int max_num_deg, int max_den_deg) {
  if (max_num_deg < 0 || max_den_deg < 0) throw Error(ErrorKind::InvalidArgument, "negative Pade bounds");
  if (f.shift() < 0) {
    // z^{-s} g with g a power series: reconstruct g then divide
    RatFunc g = pade_reconstruct(f.shifted(-f.shift()), max_num_deg - static_cast<int>(f.shift()), max_den_deg);
    return g / RatFunc(Poly::monomial(1, static_cast<std::size_t>(-f.shift())));
  }
  const Series g = f.rebased(0, f.precision());
  const std::size_t n = g.order();
  const std::size_t p = static_cast<std::size_t>(max_num_deg), q = static_cast<std::size_t>(max_den_deg);
  if (n < p + q + 2)
    throw Error(ErrorKind::InvalidArgument, "series too short for the requested Pade bounds");
  // unknowns: a_0..a_p, b_0..b_q; equations [z^k](g*B - A) = 0, k < n
  const std::size_t ncols = p + q + 2;
  RowEchelon ech(ncols);
  for (std::size_t k = 0; k < n && !ech.full(); ++k) {
    RationalVector row(ncols);
    if (k <= p) row[k] = -1;
    for (std::size_t j = 0; j <= q && j <= k; ++j) row[p + 1 + j] = g[k - j];
    ech.insert(std::move(row));
  }
  for (const auto& v : ech.kernel()) {
    std::vector<Rational> a(v.begin(), v.begin() + static_cast<long>(p + 1));
    std::vector<Rational> b(v.begin() + static_cast<long>(p + 1), v.end());
    Poly B(b);
    if (B.is_zero()) continue;
    RatFunc r(Poly(a), B);
    if (r.den()[0] == 0) continue;
    if (Series::from_ratfunc(r, g.precision()).agrees_with(g)) return r;
  }
  throw Error(ErrorKind::NoRationalFit, "no rational function within the degree bounds matches the series");
}

}  // namespace cyops
