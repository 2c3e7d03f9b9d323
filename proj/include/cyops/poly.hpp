#pragma once

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyops/rational.hpp"

namespace cyops {

/// Dense univariate polynomial over Q; coefficient i belongs to x^i.
/// The highest stored coefficient is nonzero unless the polynomial is zero.
class Poly {
 public:
  Poly() = default;
  Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
  explicit Poly(const Rational& constant) {
    if (constant != 0) c_.push_back(constant);
  }

  static Poly monomial(const Rational& coeff, std::size_t k) {
    std::vector<Rational> c(k + 1);
    c[k] = coeff;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(1, 1); }
  /// (x - root)
  static Poly linear(const Rational& root) { return Poly({-root, Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is -1.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
  bool is_constant() const { return c_.size() <= 1; }

  Rational eval(const Rational& at) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + *it;
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (is_zero()) return {};
    Poly r = *this;
    Rational l = lead();
    for (auto& v : r.c_) v /= l;
    return r;
  }

  /// p(x + a)
  Poly taylor_shift(const Rational& a) const {
    std::vector<Rational> c = c_;
    const long n = static_cast<long>(c.size());
    for (long i = 0; i < n; ++i)
      for (long j = n - 2; j >= i; --j) c[j] += a * c[j + 1];
    return Poly(std::move(c));
  }

  /// p(lambda * x)
  Poly scale_argument(const Rational& lambda) const {
    std::vector<Rational> c = c_;
    Rational pw = 1;
    for (auto& v : c) {
      v *= pw;
      pw *= lambda;
    }
    return Poly(std::move(c));
  }

  /// p(x^h)
  Poly inflate(unsigned h) const {
    if (is_zero()) return {};
    std::vector<Rational> c(static_cast<std::size_t>(degree()) * h + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i * h] = c_[i];
    return Poly(std::move(c));
  }

  /// x^deg * p(1/x) for the given formal degree.
  Poly reversed(std::size_t deg) const {
    std::vector<Rational> c(deg + 1);
    for (std::size_t i = 0; i < c_.size() && i <= deg; ++i) c[deg - i] = c_[i];
    return Poly(std::move(c));
  }

  /// Lowest index with nonzero coefficient; 0 for the zero polynomial.
  std::size_t low_degree() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return i;
    return 0;
  }

  /// Divides out x^k (caller guarantees divisibility).
  Poly shift_down(std::size_t k) const {
    if (k >= c_.size()) return {};
    return Poly(std::vector<Rational>(c_.begin() + static_cast<long>(k), c_.end()));
  }
  Poly shift_up(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Rational> c(k, Rational(0));
    c.insert(c.end(), c_.begin(), c_.end());
    return Poly(std::move(c));
  }

  /// Least common denominator of the coefficients.
  Integer denominator_lcm() const {
    Integer l = 1;
    for (const auto& v : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    return l;
  }
  /// gcd of the numerators after clearing denominators.
  Integer integer_content() const {
    Integer l = denominator_lcm();
    Integer g = 0;
    for (const auto& v : c_) {
      Rational s = v * l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
    }
    return g;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly pow(unsigned e) const {
    Poly r(Rational(1)), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      e >>= 1u;
      if (e) b *= b;
    }
    return r;
  }

  /// Euclidean division; throws on division by zero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<Rational> r = a.c_;
    std::vector<Rational> q(a.c_.size() - b.c_.size() + 1);
    const Rational lb = b.lead();
    for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
      Rational t = r[static_cast<std::size_t>(k) + b.c_.size() - 1] / lb;
      q[static_cast<std::size_t>(k)] = t;
      if (t == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[static_cast<std::size_t>(k) + j] -= t * b.c_[j];
    }
    r.resize(b.c_.size() - 1);
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  /// Monic gcd; gcd(0, 0) = 0.
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  /// Primitive integer-coefficient multiple with positive leading coefficient.
  Poly primitive() const {
    if (is_zero()) return {};
    Rational scale(denominator_lcm(), integer_content());
    scale.canonicalize();
    Poly r = *this * scale;
    if (r.lead() < 0) r = -r;
    return r;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
      const Rational& v = c_[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      Rational a = abs(v);
      if (first) {
        if (v < 0) os << "-";
      } else {
        os << (v < 0 ? " - " : " + ");
      }
      first = false;
      if (i == 0) {
        os << a.get_str();
        continue;
      }
      if (a != 1) os << a.get_str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Square-free decomposition (Yun): returns factors f_1, f_2, ... with p = c * prod f_i^i.
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
  std::vector<Poly> out;
  if (p.degree() <= 0) return out;
  Poly a = p.monic();
  Poly b = a.derivative();
  Poly c = Poly::gcd(a, b);
  Poly w = a / c;
  Poly y = b / c;
  Poly z = y - w.derivative();
  while (w.degree() > 0) {
    Poly g = Poly::gcd(w, z);
    out.push_back(g);
    w = w / g;
    y = z / g;
    z = y - w.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

/// Resultant via the Euclidean remainder sequence.
inline Rational resultant(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const long df = f.degree(), dg = g.degree();
  if (dg == 0) return rational_pow(g.lead(), static_cast<unsigned long>(df));
  if (df == 0) return rational_pow(f.lead(), static_cast<unsigned long>(dg));
  if (df < dg) {
    Rational r = resultant(g, f);
    return ((df * dg) % 2) ? Rational(-r) : r;
  }
  Poly r = f % g;
  if (r.is_zero()) return 0;
  Rational sign = ((df * dg) % 2) ? -1 : 1;
  return sign * rational_pow(g.lead(), static_cast<unsigned long>(df - r.degree())) * resultant(g, r);
}

}  // namespace cyops
