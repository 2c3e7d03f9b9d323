#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cyops/ratfunc.hpp"

namespace cyops {

/// Truncated power series z^shift * (A_0 + A_1 z + ... + A_{N-1} z^{N-1}).
///
/// N is the truncation order: coefficients of z^{shift+N} and beyond are
/// unknown. Binary operations keep the smaller absolute precision of their
/// inputs and never invent coefficients past it.
class Series {
 public:
  Series() = default;
  explicit Series(std::vector<Rational> coeffs, long shift = 0) : shift_(shift), c_(std::move(coeffs)) {}

  static Series zero(std::size_t order, long shift = 0) { return Series(std::vector<Rational>(order), shift); }
  static Series constant(const Rational& c, std::size_t order) {
    Series s = zero(order);
    if (order) s.c_[0] = c;
    return s;
  }
  static Series one(std::size_t order) { return constant(1, order); }
  /// z^k known to absolute precision `precision`.
  static Series monomial(long k, long precision) {
    Series s = zero(static_cast<std::size_t>(std::max(0L, precision - k)), k);
    if (!s.c_.empty()) s.c_[0] = 1;
    return s;
  }
  static Series from_poly(const Poly& p, std::size_t order) {
    Series s = zero(order);
    for (std::size_t i = 0; i < order; ++i) s.c_[i] = p[i];
    return s;
  }
  /// Laurent expansion of a rational function at z = 0 to absolute precision `precision`.
  static Series from_ratfunc(const RatFunc& f, long precision);

  std::size_t order() const { return c_.size(); }
  long shift() const { return shift_; }
  long precision() const { return shift_ + static_cast<long>(c_.size()); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](std::size_t m) const { return c_[m]; }
  Rational& operator[](std::size_t m) { return c_[m]; }

  /// Coefficient of z^e (absolute exponent); zero below the shift.
  Rational coeff(long e) const {
    if (e < shift_) return 0;
    if (e >= precision()) throw Error(ErrorKind::TruncationExhausted, "coefficient beyond truncation");
    return c_[static_cast<std::size_t>(e - shift_)];
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& v) { return v == 0; });
  }
  /// Exponent of the first nonzero coefficient, or precision() if none.
  long valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return shift_ + static_cast<long>(i);
    return precision();
  }

  /// Re-express with a different (lower or equal) shift and absolute precision.
  Series rebased(long new_shift, long new_precision) const {
    if (new_precision > precision())
      throw Error(ErrorKind::TruncationExhausted, "cannot extend precision of a truncated series");
    std::vector<Rational> c(static_cast<std::size_t>(std::max(0L, new_precision - new_shift)));
    for (std::size_t i = 0; i < c.size(); ++i) {
      long e = new_shift + static_cast<long>(i);
      if (e >= shift_) c[i] = c_[static_cast<std::size_t>(e - shift_)];
      else if (e < shift_) c[i] = 0;
    }
    if (new_shift > shift_) {
      for (long e = shift_; e < std::min(new_shift, precision()); ++e)
        if (c_[static_cast<std::size_t>(e - shift_)] != 0)
          throw Error(ErrorKind::InvalidArgument, "rebasing would drop nonzero coefficients");
    }
    return Series(std::move(c), new_shift);
  }
  /// Drop leading zeros into the shift.
  Series normalized_shift() const {
    long v = valuation();
    if (v == precision()) return Series({}, precision());
    return rebased(v, precision());
  }

  Series truncated(std::size_t order) const {
    Series s = *this;
    if (order < s.c_.size()) s.c_.resize(order);
    return s;
  }
  Series truncated_abs(long precision_abs) const {
    return truncated(static_cast<std::size_t>(std::max(0L, precision_abs - shift_)));
  }

  /// Multiply by z^k.
  Series shifted(long k) const { return Series(c_, shift_ + k); }

  Series operator-() const {
    Series s = *this;
    for (auto& v : s.c_) v = -v;
    return s;
  }
  friend Series operator+(const Series& a, const Series& b) {
    long s = std::min(a.shift_, b.shift_);
    long p = std::min(a.precision(), b.precision());
    if (p < s) p = s;
    std::vector<Rational> c(static_cast<std::size_t>(p - s));
    for (std::size_t i = 0; i < c.size(); ++i) {
      long e = s + static_cast<long>(i);
      if (e >= a.shift_) c[i] += a.c_[static_cast<std::size_t>(e - a.shift_)];
      if (e >= b.shift_) c[i] += b.c_[static_cast<std::size_t>(e - b.shift_)];
    }
    return Series(std::move(c), s);
  }
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
  friend Series operator*(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Series(std::move(c), a.shift_ + b.shift_);
  }
  friend Series operator*(Series a, const Rational& s) {
    for (auto& v : a.c_) v *= s;
    return a;
  }
  friend Series operator*(const Rational& s, Series a) { return std::move(a) * s; }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  /// Exact equality of coefficients on the common precision window.
  bool agrees_with(const Series& o) const { return (*this - o).is_zero(); }

  /// theta = z d/dz
  Series theta() const {
    Series s = *this;
    for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] *= (shift_ + static_cast<long>(i));
    return s;
  }
  /// d/dz
  Series derivative() const {
    Series s = theta();
    s.shift_ -= 1;
    return s;
  }

  std::string to_string(const std::string& var = "z") const;

 private:
  long shift_ = 0;
  std::vector<Rational> c_;
};

/// 1/f for f with shift 0 and nonzero constant term.
inline Series invert_unit(const Series& f) {
  if (f.shift() != 0 || f.order() == 0 || f[0] == 0)
    throw Error(ErrorKind::NotAUnit, "series is not a unit in Q[[z]]");
  const std::size_t n = f.order();
  std::vector<Rational> r(n);
  Rational inv0 = 1 / f[0];
  r[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    Rational s = 0;
    for (std::size_t j = 1; j <= k; ++j)
      if (f[j] != 0) s += f[j] * r[k - j];
    r[k] = -s * inv0;
  }
  return Series(std::move(r));
}

/// a / b for a general nonzero b (Laurent division).
inline Series divide(const Series& a, const Series& b) {
  long v = b.valuation();
  if (v >= b.precision()) throw Error(ErrorKind::NotAUnit, "division by a series that is zero to truncation");
  Series unit = b.rebased(v, b.precision()).shifted(-v);
  return (a * invert_unit(unit)).shifted(-v);
}

/// f(g) for g with shift 0 and g(0) = 0.
inline Series compose(const Series& f, const Series& g) {
  if (g.shift() != 0) throw Error(ErrorKind::InvalidArgument, "inner series must have shift 0");
  if (g.order() > 0 && g[0] != 0)
    throw Error(ErrorKind::CompositionAtNonzeroPoint, "inner series has nonzero constant term");
  if (f.shift() < 0) throw Error(ErrorKind::InvalidArgument, "outer series must be a power series");
  // z^s * F(g) = g^s * F(g); precision carries over since g = z*(unit).
  const std::size_t n = std::min(static_cast<std::size_t>(f.precision()), g.order());
  Series gt = g.truncated(n);
  Series acc = Series::zero(n);
  for (long i = static_cast<long>(f.order()) - 1; i >= 0; --i) {
    acc = acc * gt;
    if (n > 0) acc[0] += f[static_cast<std::size_t>(i)];
  }
  Series gs = Series::one(n);
  for (long i = 0; i < f.shift(); ++i) gs = gs * gt;
  return gs * acc;
}

/// exp(h) for h with h(0) = 0.
inline Series exp_series(const Series& h) {
  Series hh = h.rebased(0, h.precision());
  if (hh.order() > 0 && hh[0] != 0) throw Error(ErrorKind::InvalidArgument, "exp needs zero constant term");
  const std::size_t n = hh.order();
  std::vector<Rational> e(n);
  if (n) e[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    Rational s = 0;
    for (std::size_t k = 1; k <= m; ++k)
      if (hh[k] != 0) s += static_cast<long>(k) * hh[k] * e[m - k];
    e[m] = s / static_cast<long>(m);
  }
  return Series(std::move(e));
}

/// f^(1/n) for f(0) = 1, with result(0) = 1.
inline Series nth_root_unit(const Series& f, unsigned n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "root index must be positive");
  if (f.shift() != 0 || f.order() == 0 || f[0] != 1)
    throw Error(ErrorKind::NonUnitConstantTerm, "nth root needs constant term 1");
  // G = f^a satisfies f G' = a f' G; coefficientwise
  // m G_m = sum_{k=1}^m (a k - (m - k)) f_k G_{m-k}.
  const std::size_t len = f.order();
  const Rational a(1, n);
  std::vector<Rational> g(len);
  g[0] = 1;
  for (std::size_t m = 1; m < len; ++m) {
    Rational s = 0;
    for (std::size_t k = 1; k <= m; ++k) {
      if (f[k] == 0) continue;
      s += (a * static_cast<long>(k) - static_cast<long>(m - k)) * f[k] * g[m - k];
    }
    g[m] = s / static_cast<long>(m);
  }
  return Series(std::move(g));
}

inline Series power(const Series& f, unsigned e) {
  Series r = Series::one(f.order());
  Series b = f;
  if (e == 0) return r;
  r = b;
  for (unsigned i = 1; i < e; ++i) r = r * b;
  return r;
}

/// Compositional inverse of f in z Q[[z]] with f'(0) != 0, by Newton iteration
/// g <- g - (f(g) - z) / f'(g), doubling the number of correct terms each step.
inline Series reverse(const Series& f) {
  Series ff = f.rebased(0, f.precision());
  const std::size_t n = ff.order();
  if (n < 2 || ff[0] != 0 || ff[1] == 0)
    throw Error(ErrorKind::NotReversible, "series must be z*(unit) to be reversible");
  Series fprime = ff.derivative().rebased(0, ff.precision() - 1);
  std::vector<Rational> init(2);
  init[1] = 1 / ff[1];
  Series g(std::move(init));
  std::size_t correct = 2;
  while (correct < n) {
    correct = std::min(n, 2 * correct);
    // previous iterate padded with zeros to the new length
    std::vector<Rational> padded = g.coeffs();
    padded.resize(correct);
    Series gt(std::move(padded));
    Series fg = compose(ff.truncated(correct), gt);
    // residual vanishes to the previous accuracy, so the quotient only needs
    // the low part of f'(g)
    Series residual = (fg - Series::monomial(1, static_cast<long>(correct))).normalized_shift();
    Series denom = compose(fprime.truncated(correct), gt);
    Series step = residual * invert_unit(denom);
    g = (gt - step).rebased(0, static_cast<long>(correct));
  }
  return g.truncated(n);
}

inline Series Series::from_ratfunc(const RatFunc& f, long precision) {
  const Poly& num = f.num();
  const Poly& den = f.den();
  const long v = static_cast<long>(den.low_degree());
  Poly unit = den.shift_down(static_cast<std::size_t>(v));
  const std::size_t len = static_cast<std::size_t>(std::max(0L, precision + v));
  Series u = invert_unit(Series::from_poly(unit, len));
  Series n = Series::from_poly(num, len);
  return (n * u).shifted(-v);
}

inline std::string Series::to_string(const std::string& var) const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    long e = shift_ + static_cast<long>(i);
    std::string term = c_[i].get_str();
    if (e != 0) term += "*" + var + (e == 1 ? "" : "^" + std::to_string(e));
    if (!out.empty()) out += " + ";
    out += term;
  }
  if (out.empty()) out = "0";
  out += " + O(" + var + "^" + std::to_string(precision()) + ")";
  return out;
}

/// Element of Q((z))[ln z]: sum_j parts[j] * ln(z)^j / j!.
///
/// All parts share one shift and one truncation order.
class LogSeries {
 public:
  LogSeries() = default;
  explicit LogSeries(Series s) { parts_.push_back(std::move(s)); }
  explicit LogSeries(std::vector<Series> parts) : parts_(std::move(parts)) { align(); }

  /// ln(z)^j / j! to the given absolute precision.
  static LogSeries log_power(std::size_t j, long precision) {
    std::vector<Series> p(j + 1, Series::zero(static_cast<std::size_t>(std::max(0L, precision))));
    if (precision > 0) p[j][0] = 1;
    return LogSeries(std::move(p));
  }

  const std::vector<Series>& parts() const { return parts_; }
  /// Coefficient series of ln(z)^j/j!, or zero beyond the stored depth.
  Series part(std::size_t j) const {
    if (j < parts_.size()) return parts_[j];
    if (parts_.empty()) return Series();
    return Series::zero(parts_[0].order(), parts_[0].shift());
  }
  std::size_t depth() const { return parts_.size(); }
  long shift() const { return parts_.empty() ? 0 : parts_[0].shift(); }
  long precision() const { return parts_.empty() ? 0 : parts_[0].precision(); }

  /// Highest j with nonzero part, or -1 for zero.
  long log_degree() const {
    for (long j = static_cast<long>(parts_.size()) - 1; j >= 0; --j)
      if (!parts_[static_cast<std::size_t>(j)].is_zero()) return j;
    return -1;
  }
  bool is_zero() const { return log_degree() < 0; }

  LogSeries operator-() const {
    LogSeries r = *this;
    for (auto& p : r.parts_) p = -p;
    return r;
  }
  friend LogSeries operator+(const LogSeries& a, const LogSeries& b) {
    if (a.parts_.empty()) return b;
    if (b.parts_.empty()) return a;
    std::vector<Series> p(std::max(a.depth(), b.depth()));
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = a.part(j) + b.part(j);
    return LogSeries(std::move(p));
  }
  friend LogSeries operator-(const LogSeries& a, const LogSeries& b) { return a + (-b); }
  friend LogSeries operator*(const Series& s, const LogSeries& y) {
    std::vector<Series> p;
    p.reserve(y.depth());
    for (const auto& part : y.parts_) p.push_back(s * part);
    return LogSeries(std::move(p));
  }
  friend LogSeries operator*(const Rational& s, const LogSeries& y) {
    LogSeries r = y;
    for (auto& part : r.parts_) part = part * s;
    return r;
  }
  /// Product using L_a * L_b = C(a+b, a) L_{a+b}, L_j = ln^j/j!.
  friend LogSeries operator*(const LogSeries& a, const LogSeries& b) {
    if (a.parts_.empty() || b.parts_.empty()) return {};
    std::vector<Series> p(a.depth() + b.depth() - 1);
    std::vector<bool> set(p.size(), false);
    for (std::size_t i = 0; i < a.depth(); ++i)
      for (std::size_t j = 0; j < b.depth(); ++j) {
        Series t = (a.parts_[i] * b.parts_[j]) * Rational(binomial(i + j, i));
        p[i + j] = set[i + j] ? p[i + j] + t : t;
        set[i + j] = true;
      }
    return LogSeries(std::move(p));
  }

  /// theta(z^m L_j) = m z^m L_j + z^m L_{j-1}
  LogSeries theta() const {
    std::vector<Series> p;
    p.reserve(parts_.size());
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      Series t = parts_[j].theta();
      if (j + 1 < parts_.size()) t = t + parts_[j + 1];
      p.push_back(std::move(t));
    }
    return LogSeries(std::move(p));
  }
  LogSeries shifted(long k) const {
    LogSeries r = *this;
    for (auto& part : r.parts_) part = part.shifted(k);
    return r;
  }
  LogSeries truncated_abs(long precision_abs) const {
    LogSeries r = *this;
    for (auto& part : r.parts_) part = part.truncated_abs(precision_abs);
    return r;
  }

  /// The formal derivative d/d(ln z): L_j -> L_{j-1}.
  LogSeries log_shift() const {
    if (parts_.size() <= 1) return LogSeries(Series::zero(parts_.empty() ? 0 : parts_[0].order(), shift()));
    return LogSeries(std::vector<Series>(parts_.begin() + 1, parts_.end()));
  }

 private:
  void align() {
    if (parts_.empty()) return;
    long s = parts_[0].shift(), p = parts_[0].precision();
    for (const auto& part : parts_) {
      s = std::min(s, part.shift());
      p = std::min(p, part.precision());
    }
    if (p < s) p = s;
    for (auto& part : parts_) part = part.rebased(s, p);
    while (parts_.size() > 1 && parts_.back().is_zero()) parts_.pop_back();
  }

  std::vector<Series> parts_;
};

}  // namespace cyops
