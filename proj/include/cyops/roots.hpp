#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cyops/linalg.hpp"
#include "cyops/ratfunc.hpp"

namespace cyops {

struct RootSplit {
  /// Distinct rational roots with multiplicity, ascending.
  std::vector<std::pair<Rational, int>> roots;
  /// Monic cofactor without rational roots.
  Poly residual;
};

namespace detail {

using Complex = std::complex<long double>;

inline long double to_long_double(const Rational& r) {
  mpf_class f(r, 128);
  long exp = 0;
  double mant = mpf_get_d_2exp(&exp, f.get_mpf_t());
  return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
}

/// Simultaneous (Aberth) iteration for all complex roots of a squarefree polynomial.
inline std::vector<Complex> approximate_roots(const Poly& p) {
  const long n = p.degree();
  std::vector<Complex> out;
  if (n <= 0) return out;
  Poly m = p.monic();
  std::vector<long double> c(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = to_long_double(m[static_cast<std::size_t>(i)]);
  if (n == 1) return {Complex(-c[0], 0)};
  long double bound = 0;
  for (long i = 0; i < n; ++i) bound = std::max(bound, std::fabs(c[static_cast<std::size_t>(i)]));
  long double radius = std::min<long double>(1 + bound, 1e300L);
  // smallest root modulus estimate keeps the start circle near tiny roots
  long double lower = 0;
  if (c[0] != 0) {
    long double mx = 0;
    for (long i = 1; i <= n; ++i) mx = std::max(mx, std::fabs(c[static_cast<std::size_t>(i)] / c[0]));
    lower = 1 / (1 + mx);
  }
  long double r0 = lower > 0 ? std::sqrt(lower * radius) : radius / 2;
  for (long k = 0; k < n; ++k) {
    long double ang = 2.0L * 3.14159265358979323846L * (static_cast<long double>(k) + 0.25L) / static_cast<long double>(n);
    out.emplace_back(r0 * std::cos(ang), r0 * std::sin(ang));
  }
  auto eval = [&](Complex x, Complex& d) {
    Complex v = 1;
    d = 0;
    for (long i = n - 1; i >= 0; --i) {
      d = d * x + v;
      v = v * x + c[static_cast<std::size_t>(i)];
    }
    return v;
  };
  for (int iter = 0; iter < 800; ++iter) {
    long double change = 0;
    for (long i = 0; i < n; ++i) {
      Complex d;
      Complex v = eval(out[static_cast<std::size_t>(i)], d);
      if (v == Complex(0)) continue;
      Complex ratio = v / d;
      Complex s = 0;
      for (long j = 0; j < n; ++j)
        if (j != i) s += Complex(1) / (out[static_cast<std::size_t>(i)] - out[static_cast<std::size_t>(j)]);
      Complex w = ratio / (Complex(1) - ratio * s);
      out[static_cast<std::size_t>(i)] -= w;
      change = std::max(change, std::abs(w) / (1 + std::abs(out[static_cast<std::size_t>(i)])));
    }
    if (change < 1e-17L) break;
  }
  return out;
}

/// Newton polish of a real approximation in high precision.
inline mpf_class polish(const Poly& p, long double x0) {
  const mp_bitcnt_t prec = 512;
  mpf_class x(static_cast<double>(x0), prec);
  Poly dp = p.derivative();
  for (int it = 0; it < 60; ++it) {
    mpf_class v(0, prec), d(0, prec);
    for (long i = p.degree(); i >= 0; --i) v = v * x + mpf_class(p[static_cast<std::size_t>(i)], prec);
    for (long i = dp.degree(); i >= 0; --i) d = d * x + mpf_class(dp[static_cast<std::size_t>(i)], prec);
    if (d == 0) break;
    mpf_class step = v / d;
    x -= step;
    if (step == 0) break;
  }
  return x;
}

/// Continued-fraction convergents of x, checked exactly as roots of p.
inline std::optional<Rational> rationalize_root(const Poly& p, const mpf_class& x) {
  const mp_bitcnt_t prec = x.get_prec();
  mpf_class rest = x;
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int step = 0; step < 80; ++step) {
    mpf_class fl(0, prec);
    mpf_floor(fl.get_mpf_t(), rest.get_mpf_t());
    Integer a(fl);
    Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
    Rational cand(h2, k2);
    cand.canonicalize();
    // a convergent can be a different root of p
    mpf_class gap = mpf_class(cand, prec) - x;
    if (abs(gap) < mpf_class(1e-40, prec) * (1 + abs(x)) && p.eval(cand) == 0) return cand;
    if (mpz_sizeinbase(k2.get_mpz_t(), 2) > 120) break;
    mpf_class frac = rest - fl;
    if (frac == 0) break;
    rest = mpf_class(1, prec) / frac;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
  }
  return std::nullopt;
}

inline std::vector<Rational> rational_roots_squarefree(const Poly& f) {
  std::set<Rational> found;
  if (f.degree() <= 0) return {};
  Poly g = f;
  if (g[0] == 0) {
    found.insert(Rational(0));
    g = g.shift_down(g.low_degree());
  }
  if (g.degree() == 1) {
    found.insert(-g[0] / g[1]);
  } else if (g.degree() > 1) {
    for (const auto& r : approximate_roots(g)) {
      if (std::fabs(r.imag()) > 1e-6L * (1 + std::fabs(r.real()))) continue;
      if (auto q = rationalize_root(g, polish(g, r.real()))) found.insert(*q);
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace detail

/// Exact rational roots with multiplicities. Candidates come from a numerical
/// root finder; every reported root is verified by exact evaluation.
inline RootSplit rational_roots(const Poly& p) {
  RootSplit out;
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "roots of the zero polynomial");
  Poly residual = p.monic();
  auto factors = squarefree_decomposition(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (const auto& r : detail::rational_roots_squarefree(factors[i])) {
      const int mult = static_cast<int>(i + 1);
      out.roots.emplace_back(r, mult);
      residual = residual / Poly::linear(r).pow(static_cast<unsigned>(mult));
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.residual = residual.monic();
  return out;
}

/// Polynomial through (xs[i], ys[i]) by Newton divided differences.
inline Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  Poly r;
  for (std::size_t i = n; i-- > 0;) r = r * Poly::linear(xs[i]) + Poly(dd[i]);
  return r;
}

struct LogDerivativeSolution {
  std::optional<RatFunc> alpha;  ///< alpha with alpha'/alpha = w
  bool nonintegral_residue = false;
  std::string reason;
  /// Residues of w as (residue, monic factor of the pole divisor carrying it).
  std::vector<std::pair<Rational, Poly>> residues;
};

/// Solves alpha'/alpha = w in Q(z). w must have only simple poles, no
/// polynomial part and integral residues; the residues are the roots of the
/// Rothstein-Trager resultant res_z(B, A - t B').
inline LogDerivativeSolution solve_log_derivative(const RatFunc& w) {
  LogDerivativeSolution out;
  if (w.is_zero()) {
    out.alpha = RatFunc(1);
    return out;
  }
  const Poly& A = w.num();
  const Poly& B = w.den();
  if (A.degree() >= B.degree()) {
    out.reason = "nonzero polynomial part at infinity";
    return out;
  }
  if (Poly::gcd(B, B.derivative()).degree() > 0) {
    out.reason = "pole of order greater than one";
    return out;
  }
  const long d = B.degree();
  std::vector<Rational> ts, vals;
  const Poly dB = B.derivative();
  for (long k = 0; k <= d; ++k) {
    Rational t(k);
    ts.push_back(t);
    vals.push_back(resultant(B, A - dB * t));
  }
  Poly R = interpolate(ts, vals);
  RootSplit split = rational_roots(R);
  Poly remaining = B;
  RatFunc alpha(1);
  for (const auto& [res, mult] : split.roots) {
    Poly g = Poly::gcd(B, A - dB * res);
    out.residues.emplace_back(res, g);
    remaining = remaining / g;
    if (!is_integer(res)) {
      out.nonintegral_residue = true;
      continue;
    }
    alpha *= RatFunc(g).pow(static_cast<int>(res.get_num().get_si()));
  }
  if (split.residual.degree() > 0) out.nonintegral_residue = true;
  if (out.nonintegral_residue) {
    out.reason = "residue not an integer";
    return out;
  }
  if (remaining.degree() != 0 || alpha.derivative() / alpha != w) {
    out.reason = "log-derivative reconstruction failed verification";
    return out;
  }
  out.alpha = alpha;
  return out;
}

}  // namespace cyops
