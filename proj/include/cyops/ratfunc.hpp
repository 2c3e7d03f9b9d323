#pragma once

#include <string>
#include <utility>

#include "cyops/poly.hpp"

namespace cyops {

/// Reduced quotient num/den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc() : den_(Rational(1)) {}
  RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
  RatFunc(long c) : RatFunc(Rational(c)) {}
  RatFunc(Poly p) : num_(std::move(p)), den_(Rational(1)) {}
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  static RatFunc z() { return RatFunc(Poly::x()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }
  Rational constant_value() const { return num_[0]; }

  RatFunc operator-() const { return RatFunc(-num_, den_, Reduced{}); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_, Poly(Rational(1)), Reduced{});
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFunc derivative() const {
    if (is_polynomial()) return RatFunc(num_.derivative(), den_, Reduced{});
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }
  RatFunc derivative(unsigned k) const {
    RatFunc r = *this;
    for (unsigned i = 0; i < k; ++i) r = r.derivative();
    return r;
  }

  RatFunc pow(int e) const {
    if (e < 0) return RatFunc(1) / pow(-e);
    return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Reduced{}).normalized_lead();
  }

  /// f(z + a)
  RatFunc taylor_shift(const Rational& a) const { return RatFunc(num_.taylor_shift(a), den_.taylor_shift(a)); }
  /// f(lambda z)
  RatFunc scale_argument(const Rational& lambda) const {
    return RatFunc(num_.scale_argument(lambda), den_.scale_argument(lambda));
  }
  /// f(z^h)
  RatFunc inflate(unsigned h) const { return RatFunc(num_.inflate(h), den_.inflate(h)); }
  /// f(1/z)
  RatFunc invert_argument() const {
    const std::size_t d = static_cast<std::size_t>(std::max(num_.degree(), den_.degree()));
    return RatFunc(num_.reversed(d), den_.reversed(d));
  }

  /// Composition f(g) for a rational g.
  RatFunc compose(const RatFunc& g) const {
    RatFunc n, d;
    for (long i = num_.degree(); i >= 0; --i) n = n * g + RatFunc(num_[static_cast<std::size_t>(i)]);
    for (long i = den_.degree(); i >= 0; --i) d = d * g + RatFunc(den_[static_cast<std::size_t>(i)]);
    return n / d;
  }

  /// Order of vanishing at z = 0 (negative for a pole); 0 for the zero function.
  long valuation_at_zero() const {
    if (is_zero()) return 0;
    return static_cast<long>(num_.low_degree()) - static_cast<long>(den_.low_degree());
  }

  std::string to_string(const std::string& var = "z") const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }

 private:
  struct Reduced {};
  RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  RatFunc normalized_lead() const {
    RatFunc r = *this;
    r.normalize_den();
    return r;
  }

  void normalize_den() {
    Rational l = den_.lead();
    if (l != 1) {
      num_ *= Rational(1) / l;
      den_ *= Rational(1) / l;
    }
  }

  void reduce() {
    if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(Rational(1));
      return;
    }
    if (den_.degree() > 0) {
      Poly g = Poly::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    normalize_den();
  }

  Poly num_;
  Poly den_;
};

}  // namespace cyops
