#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "cyops/series.hpp"

namespace cyops {

/// sum_i a_i(z) d^i with a_i in Q(z); a.back() is the leading coefficient.
class DOperator {
 public:
  DOperator() = default;
  explicit DOperator(std::vector<RatFunc> coeffs) : a_(std::move(coeffs)) { trim(); }

  /// The operator d itself.
  static DOperator d() { return DOperator({RatFunc(0), RatFunc(1)}); }
  /// Multiplication by f.
  static DOperator scalar(const RatFunc& f) { return DOperator({f}); }

  long order() const { return static_cast<long>(a_.size()) - 1; }
  bool is_zero() const { return a_.empty(); }
  const std::vector<RatFunc>& coeffs() const { return a_; }
  RatFunc operator[](std::size_t i) const { return i < a_.size() ? a_[i] : RatFunc(0); }
  const RatFunc& leading() const { return a_.back(); }

  DOperator monic() const {
    if (is_zero()) return {};
    DOperator r = *this;
    RatFunc l = leading();
    for (auto& c : r.a_) c /= l;
    return r;
  }

  friend DOperator operator+(const DOperator& p, const DOperator& q) {
    std::vector<RatFunc> c(std::max(p.a_.size(), q.a_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[i] + q[i];
    return DOperator(std::move(c));
  }
  DOperator operator-() const {
    DOperator r = *this;
    for (auto& c : r.a_) c = -c;
    return r;
  }
  friend DOperator operator-(const DOperator& p, const DOperator& q) { return p + (-q); }

  /// Composition p o q, using d^i b = sum_k C(i,k) b^(k) d^(i-k).
  friend DOperator operator*(const DOperator& p, const DOperator& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<RatFunc> c(static_cast<std::size_t>(p.order() + q.order() + 1));
    for (std::size_t j = 0; j < q.a_.size(); ++j) {
      if (q.a_[j].is_zero()) continue;
      RatFunc deriv = q.a_[j];
      for (std::size_t k = 0; k < p.a_.size(); ++k) {
        // contributions of every p_i d^i with i >= k to b^(k) d^(i-k+j)
        for (std::size_t i = k; i < p.a_.size(); ++i) {
          if (p.a_[i].is_zero()) continue;
          c[i - k + j] += p.a_[i] * deriv * RatFunc(Rational(binomial(i, k)));
        }
        deriv = deriv.derivative();
        if (deriv.is_zero()) break;
      }
    }
    return DOperator(std::move(c));
  }
  friend DOperator operator*(const RatFunc& f, const DOperator& q) {
    DOperator r = q;
    for (auto& c : r.a_) c = f * c;
    r.trim();
    return r;
  }

  friend bool operator==(const DOperator& p, const DOperator& q) { return p.a_ == q.a_; }

  std::string to_string() const {
    std::string out;
    for (long i = order(); i >= 0; --i) {
      const RatFunc& c = a_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")";
      if (i > 0) out += "*D" + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    return out.empty() ? "0" : out;
  }

 private:
  void trim() {
    while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
  }
  std::vector<RatFunc> a_;
};

/// sum_i z^i P_i(T) with T = theta = z d/dz; slice i is P_i.
class ThetaOperator {
 public:
  ThetaOperator() = default;
  explicit ThetaOperator(std::vector<Poly> slices) : p_(std::move(slices)) { trim(); }

  static ThetaOperator theta() { return ThetaOperator({Poly::x()}); }
  static ThetaOperator z_power(std::size_t k) {
    std::vector<Poly> s(k + 1);
    s[k] = Poly(Rational(1));
    return ThetaOperator(std::move(s));
  }

  const std::vector<Poly>& slices() const { return p_; }
  Poly slice(std::size_t i) const { return i < p_.size() ? p_[i] : Poly(); }
  /// Number of slices minus one (the z-degree).
  long degree() const { return static_cast<long>(p_.size()) - 1; }
  long order() const {
    long o = -1;
    for (const auto& s : p_) o = std::max(o, s.degree());
    return o;
  }
  bool is_zero() const { return p_.empty(); }

  /// Leading theta-coefficient as a polynomial in z.
  Poly leading_in_theta() const {
    const long o = order();
    std::vector<Rational> c(p_.size());
    for (std::size_t i = 0; i < p_.size(); ++i) c[i] = p_[i][static_cast<std::size_t>(o)];
    return Poly(std::move(c));
  }

  /// Divides out z^s, removes the rational content and makes the first
  /// nonzero slice have positive leading coefficient.
  ThetaOperator normalized() const {
    if (is_zero()) return {};
    std::size_t s = 0;
    while (p_[s].is_zero()) ++s;
    std::vector<Poly> sl(p_.begin() + static_cast<long>(s), p_.end());
    Integer den = 1, num = 0;
    for (const auto& q : sl) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.denominator_lcm().get_mpz_t());
    }
    for (const auto& q : sl) {
      for (const auto& c : q.coeffs()) {
        Rational t = c * den;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.get_num_mpz_t());
      }
    }
    Rational scale(den, num);
    scale.canonicalize();
    if (sl[0].lead() < 0) scale = -scale;
    for (auto& q : sl) q *= scale;
    return ThetaOperator(std::move(sl));
  }

  friend ThetaOperator operator+(const ThetaOperator& a, const ThetaOperator& b) {
    std::vector<Poly> s(std::max(a.p_.size(), b.p_.size()));
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.slice(i) + b.slice(i);
    return ThetaOperator(std::move(s));
  }
  ThetaOperator operator-() const {
    ThetaOperator r = *this;
    for (auto& s : r.p_) s = -s;
    return r;
  }
  friend ThetaOperator operator-(const ThetaOperator& a, const ThetaOperator& b) { return a + (-b); }
  friend ThetaOperator operator*(const Rational& c, const ThetaOperator& a) {
    ThetaOperator r = a;
    for (auto& s : r.p_) s *= c;
    r.trim();
    return r;
  }
  /// (z^i P(T)) (z^j Q(T)) = z^(i+j) P(T + j) Q(T)
  friend ThetaOperator operator*(const ThetaOperator& a, const ThetaOperator& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Poly> s(a.p_.size() + b.p_.size() - 1);
    for (std::size_t j = 0; j < b.p_.size(); ++j) {
      if (b.p_[j].is_zero()) continue;
      for (std::size_t i = 0; i < a.p_.size(); ++i) {
        if (a.p_[i].is_zero()) continue;
        s[i + j] += a.p_[i].taylor_shift(Rational(static_cast<long>(j))) * b.p_[j];
      }
    }
    return ThetaOperator(std::move(s));
  }

  friend bool operator==(const ThetaOperator& a, const ThetaOperator& b) { return a.p_ == b.p_; }

  /// Human-readable form; `parse_operator` accepts it back.
  std::string to_string() const;

 private:
  void trim() {
    while (!p_.empty() && p_.back().is_zero()) p_.pop_back();
  }
  std::vector<Poly> p_;
};

namespace detail {

/// Stirling numbers of the second kind S(k, j), 0 <= j <= k <= n.
inline std::vector<std::vector<Integer>> stirling2(std::size_t n) {
  std::vector<std::vector<Integer>> s(n + 1, std::vector<Integer>(n + 1, 0));
  s[0][0] = 1;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t j = 1; j <= k; ++j) s[k][j] = s[k - 1][j - 1] + Integer(static_cast<long>(j)) * s[k - 1][j];
  return s;
}

/// T (T - 1) ... (T - j + 1)
inline Poly falling_factorial(std::size_t j) {
  Poly r(Rational(1));
  for (std::size_t k = 0; k < j; ++k) r *= Poly::linear(Rational(static_cast<long>(k)));
  return r;
}

}  // namespace detail

/// theta^k = sum_j S(k, j) z^j d^j; the result has polynomial coefficients.
inline DOperator to_d_form(const ThetaOperator& t) {
  const long ord = t.order();
  if (ord < 0) return {};
  auto st = detail::stirling2(static_cast<std::size_t>(ord));
  std::vector<Poly> c(static_cast<std::size_t>(ord) + 1);
  for (std::size_t i = 0; i < t.slices().size(); ++i) {
    const Poly& p = t.slices()[i];
    for (long k = 0; k <= p.degree(); ++k) {
      const Rational& pk = p.coeffs()[static_cast<std::size_t>(k)];
      if (pk == 0) continue;
      for (long j = 0; j <= k; ++j) {
        const Integer& s = st[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        if (s == 0) continue;
        c[static_cast<std::size_t>(j)] += Poly::monomial(pk * Rational(s), i + static_cast<std::size_t>(j));
      }
    }
  }
  std::vector<RatFunc> a;
  for (auto& p : c) a.emplace_back(std::move(p));
  return DOperator(std::move(a));
}

/// Polynomial theta-form g*L with g in Q(z) chosen minimal: denominators are
/// cleared and the largest common power of z is divided out. Content is kept.
inline ThetaOperator to_theta_form(const DOperator& d) {
  if (d.is_zero()) return {};
  Poly den(Rational(1));
  for (const auto& c : d.coeffs()) den = den / Poly::gcd(den, c.den()) * c.den();
  const long N = d.order();
  // d^j = z^-j T(T-1)...(T-j+1): z^N b_j d^j = b_j z^(N-j) ff_j(T)
  std::vector<Poly> slices;
  for (long j = 0; j <= N; ++j) {
    const RatFunc& c = d.coeffs()[static_cast<std::size_t>(j)];
    if (c.is_zero()) continue;
    Poly b = c.num() * (den / c.den());
    Poly ff = detail::falling_factorial(static_cast<std::size_t>(j));
    for (long e = 0; e <= b.degree(); ++e) {
      const Rational& be = b.coeffs()[static_cast<std::size_t>(e)];
      if (be == 0) continue;
      std::size_t idx = static_cast<std::size_t>(e + N - j);
      if (slices.size() <= idx) slices.resize(idx + 1);
      slices[idx] += ff * be;
    }
  }
  std::size_t s = 0;
  while (s < slices.size() && slices[s].is_zero()) ++s;
  return ThetaOperator(std::vector<Poly>(slices.begin() + static_cast<long>(s), slices.end()));
}

/// L^v = sum_i (-1)^(N+i) d^i a_i for an operator of order N.
inline DOperator dual(const DOperator& L) {
  const long N = L.order();
  if (N < 0) return {};
  std::vector<RatFunc> c(static_cast<std::size_t>(N) + 1);
  for (long i = 0; i <= N; ++i) {
    const RatFunc& a = L.coeffs()[static_cast<std::size_t>(i)];
    if (a.is_zero()) continue;
    const bool negative = ((N + i) % 2) != 0;
    RatFunc deriv = a;
    for (long k = 0; k <= i; ++k) {
      // d^i a = sum_k C(i,k) a^(k) d^(i-k)
      RatFunc term = deriv * RatFunc(Rational(binomial(static_cast<unsigned long>(i), static_cast<unsigned long>(k))));
      c[static_cast<std::size_t>(i - k)] += negative ? -term : term;
      deriv = deriv.derivative();
      if (deriv.is_zero()) break;
    }
  }
  return DOperator(std::move(c));
}

/// Formal adjoint L* = (-1)^N L^v, the anti-automorphism with d* = -d.
inline DOperator adjoint(const DOperator& L) {
  DOperator r = dual(L);
  return (L.order() % 2) ? -r : r;
}

/// Formal adjoint on theta-forms: (z^i P(T))* = z^i P(-T - 1 - i).
inline ThetaOperator adjoint(const ThetaOperator& L) {
  std::vector<Poly> s;
  for (std::size_t i = 0; i < L.slices().size(); ++i) {
    const Poly& p = L.slices()[i];
    s.push_back(p.scale_argument(-1).taylor_shift(Rational(static_cast<long>(i) + 1)));
  }
  return ThetaOperator(std::move(s));
}

/// theta-form dual via the d-form, as the polynomial operator of minimal z-power.
inline ThetaOperator dual(const ThetaOperator& L) { return to_theta_form(dual(to_d_form(L))); }

/// Exact action on log-series: sum_i z^i P_i(theta) y.
inline LogSeries apply(const ThetaOperator& L, const LogSeries& y) {
  const long ord = L.order();
  if (ord < 0) return LogSeries(Series::zero(static_cast<std::size_t>(std::max(0L, y.precision() - y.shift())), y.shift()));
  std::vector<LogSeries> powers{y};
  for (long k = 1; k <= ord; ++k) powers.push_back(powers.back().theta());
  LogSeries out;
  bool first = true;
  for (std::size_t i = 0; i < L.slices().size(); ++i) {
    const Poly& p = L.slices()[i];
    if (p.is_zero()) continue;
    LogSeries acc;
    bool set = false;
    for (long k = 0; k <= p.degree(); ++k) {
      const Rational& c = p.coeffs()[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      LogSeries t = c * powers[static_cast<std::size_t>(k)];
      acc = set ? acc + t : t;
      set = true;
    }
    acc = acc.shifted(static_cast<long>(i));
    out = first ? acc : out + acc;
    first = false;
  }
  // products with z^i do not extend what is known beyond y's own precision
  return out.truncated_abs(y.precision());
}

inline LogSeries apply(const ThetaOperator& L, const Series& y) { return apply(L, LogSeries(y)); }

/// Exact action of a d-form operator; coefficients are expanded as Laurent series.
inline LogSeries apply(const DOperator& L, const LogSeries& y) {
  LogSeries deriv = y;
  LogSeries out;
  bool first = true;
  for (long i = 0; i <= L.order(); ++i) {
    const RatFunc& a = L.coeffs()[static_cast<std::size_t>(i)];
    if (!a.is_zero()) {
      const long v = a.valuation_at_zero();
      Series as = Series::from_ratfunc(a, v + std::max(0L, deriv.precision() - deriv.shift()));
      LogSeries t = as * deriv;
      out = first ? t : out + t;
      first = false;
    }
    deriv = deriv.theta().shifted(-1);
  }
  if (first) return LogSeries(Series::zero(0, y.precision()));
  return out;
}

inline std::string ThetaOperator::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (p_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (i == 1) out += "z*";
    else if (i > 1) out += "z^" + std::to_string(i) + "*";
    out += "(" + p_[i].to_string("T") + ")";
  }
  return out.empty() ? "0" : out;
}

/// Exact equality of the annihilated space: both sides normalized.
inline bool same_operator(const ThetaOperator& a, const ThetaOperator& b) { return a.normalized() == b.normalized(); }
inline bool same_operator(const DOperator& a, const DOperator& b) { return a.monic() == b.monic(); }

}  // namespace cyops
