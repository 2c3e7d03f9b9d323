#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "cyops/errors.hpp"

namespace cyops {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Canonical text: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& r) { return r.get_str(); }

/// Accepts "p", "-p", "p/q" with decimal digits.
inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0 || r.get_den() == 0) {
    throw Error(ErrorKind::InvalidArgument, "not a rational number: '" + std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// p-adic valuation of a nonzero integer.
inline long valuation(const Integer& n, unsigned long p) {
  if (n == 0) return 0;
  Integer m = abs(n);
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

inline Rational rational_pow(const Rational& base, unsigned long e) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  return Rational(num, den);
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace cyops
