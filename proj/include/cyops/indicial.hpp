#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cyops/operator.hpp"
#include "cyops/roots.hpp"

namespace cyops {

/// A point of P^1(Q).
struct Point {
  bool infinity = false;
  Rational value = 0;

  static Point at(const Rational& v) { return Point{false, v}; }
  static Point at_infinity() { return Point{true, 0}; }

  std::string to_string() const { return infinity ? "infinity" : cyops::to_string(value); }
  friend bool operator==(const Point& a, const Point& b) {
    return a.infinity == b.infinity && (a.infinity || a.value == b.value);
  }
};

struct IndicialData {
  Point point;
  Poly polynomial;  ///< in T
  std::vector<std::pair<Rational, int>> rational_roots;
  Poly residual_factor;

  /// Rational exponents listed with multiplicity, ascending.
  std::vector<Rational> exponents() const {
    std::vector<Rational> out;
    for (const auto& [r, m] : rational_roots)
      for (int k = 0; k < m; ++k) out.push_back(r);
    return out;
  }
  bool all_rational() const { return residual_factor.degree() <= 0; }
};

/// f(z + p) in every coefficient: the operator in the local coordinate at p.
inline DOperator translate(const DOperator& L, const Rational& p) {
  std::vector<RatFunc> c;
  for (const auto& a : L.coeffs()) c.push_back(a.taylor_shift(p));
  return DOperator(std::move(c));
}

/// Pullback along z -> 1/z: sum z^(m-i) P_i(-T).
inline ThetaOperator pullback_inversion(const ThetaOperator& L) {
  const std::size_t m = L.slices().size();
  std::vector<Poly> s(m);
  for (std::size_t i = 0; i < m; ++i) s[m - 1 - i] = L.slices()[i].scale_argument(-1);
  return ThetaOperator(std::move(s));
}

/// Theta-form whose P_0 governs the point p in its local coordinate
/// (z - p, or 1/z at infinity).
inline ThetaOperator localize(const ThetaOperator& L, const Point& p) {
  if (p.infinity) return pullback_inversion(L);
  if (p.value == 0) return L;
  return to_theta_form(translate(to_d_form(L), p.value));
}

/// Indicial polynomial and its rational roots at p.
inline IndicialData indicial(const ThetaOperator& L, const Point& p) {
  ThetaOperator loc = localize(L, p);
  IndicialData d;
  d.point = p;
  if (loc.is_zero()) throw Error(ErrorKind::InvalidArgument, "indicial polynomial of the zero operator");
  std::size_t s = 0;
  while (loc.slices()[s].is_zero()) ++s;
  d.polynomial = loc.slices()[s].monic();
  if (d.polynomial.degree() != L.order())
    throw Error(ErrorKind::IrregularSingularity,
                "indicial polynomial at " + p.to_string() + " has degree " + std::to_string(d.polynomial.degree()) +
                    " below the order " + std::to_string(L.order()));
  RootSplit split = rational_roots(d.polynomial);
  d.rational_roots = split.roots;
  d.residual_factor = split.residual;
  return d;
}

inline IndicialData indicial(const DOperator& L, const Point& p) { return indicial(to_theta_form(L), p); }

struct SingularPoints {
  std::vector<Point> points;  ///< 0, the finite rational ones, then infinity
  Poly residual;              ///< factor of the leading coefficient without rational roots
};

/// Candidate singular points: 0, infinity, and zeros of the leading
/// theta-coefficient sum_i lc(P_i) z^i.
inline SingularPoints singular_points(const ThetaOperator& L) {
  SingularPoints out;
  out.points.push_back(Point::at(0));
  Poly lead = L.leading_in_theta();
  if (lead.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero operator");
  lead = lead.shift_down(lead.low_degree());
  RootSplit split = rational_roots(lead);
  for (const auto& [r, m] : split.roots) out.points.push_back(Point::at(r));
  out.points.push_back(Point::at_infinity());
  out.residual = split.residual;
  return out;
}

}  // namespace cyops
