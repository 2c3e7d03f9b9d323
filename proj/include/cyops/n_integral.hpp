#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyops/series.hpp"

namespace cyops {

namespace detail {

inline std::vector<unsigned long> primes_up_to(unsigned long bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<unsigned long> out;
  for (unsigned long p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (unsigned long q = p * p; q <= bound; q += p) composite[q] = true;
  }
  return out;
}

inline const std::vector<unsigned long>& cached_primes(unsigned long bound) {
  static std::map<unsigned long, std::vector<unsigned long>> cache;
  auto it = cache.find(bound);
  if (it == cache.end()) it = cache.emplace(bound, primes_up_to(bound)).first;
  return it->second;
}

/// p -> v_p(n) by trial division; false if a cofactor above the bound remains.
inline bool factor_smooth(Integer n, const std::vector<unsigned long>& primes, std::map<unsigned long, long>& out) {
  for (unsigned long p : primes) {
    if (n == 1) return true;
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    long v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++v;
    }
    out[p] = v;
  }
  return n == 1;
}

}  // namespace detail

struct NIntegralWitness {
  std::optional<Integer> N;
  std::size_t depth = 0;
  unsigned long prime_bound = 0;
  std::string reason;  ///< why no witness was produced
};

/// True iff N^m A_m is an integer for every m < depth.
inline bool verify_n_integral(const Series& f, const Integer& N, std::size_t depth) {
  Integer Nm = 1;
  for (std::size_t m = 0; m < depth; ++m) {
    Rational t = f.coeff(static_cast<long>(m)) * Rational(Nm);
    if (!is_integer(t)) return false;
    Nm *= N;
  }
  return true;
}

/// Smallest N with N^m A_m in Z for m < depth, where e_p = max_m ceil(-v_p(A_m)/m).
/// Gives up when a denominator has a prime factor above prime_bound, a new
/// prime first shows up in the second half of the range, or some exponent
/// grows between the first half and the whole range.
inline NIntegralWitness n_integral_witness(const Series& f, unsigned long prime_bound, std::size_t depth) {
  NIntegralWitness w;
  w.depth = depth;
  w.prime_bound = prime_bound;
  if (f.shift() < 0 || f.precision() < static_cast<long>(depth)) {
    w.reason = "series has fewer than depth coefficients";
    return w;
  }
  if (!is_integer(f.coeff(0))) {
    w.reason = "constant term is not an integer";
    return w;
  }
  const auto& primes = detail::cached_primes(prime_bound);
  const std::size_t half = depth / 2;
  std::map<unsigned long, long> e_half, e_full;
  for (std::size_t m = 1; m < depth; ++m) {
    const Rational a = f.coeff(static_cast<long>(m));
    if (a == 0 || a.get_den() == 1) continue;
    std::map<unsigned long, long> v;
    if (!detail::factor_smooth(a.get_den(), primes, v)) {
      w.reason = "denominator of A_" + std::to_string(m) + " has a prime factor above " + std::to_string(prime_bound);
      return w;
    }
    for (auto [p, k] : v) {
      const long e = (k + static_cast<long>(m) - 1) / static_cast<long>(m);
      if (m >= half && !e_full.count(p)) {
        w.reason = "prime " + std::to_string(p) + " first divides a denominator at index " + std::to_string(m);
        return w;
      }
      e_full[p] = std::max(e_full[p], e);
      if (m < half) e_half[p] = std::max(e_half[p], e);
    }
  }
  for (auto [p, e] : e_full)
    if (e_half[p] < e) {
      w.reason = "exponent of " + std::to_string(p) + " still growing";
      return w;
    }
  Integer N = 1;
  for (auto [p, e] : e_full) {
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e));
    N *= pe;
  }
  if (!verify_n_integral(f, N, depth)) {
    w.reason = "witness failed verification";
    return w;
  }
  w.N = N;
  return w;
}

}  // namespace cyops
