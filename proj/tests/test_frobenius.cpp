#include <catch2/catch_amalgamated.hpp>

#include "cyops/cyops.hpp"

using namespace cyops;

namespace {

Rational harmonic(long n) {
  Rational h = 0;
  for (long k = 1; k <= n; ++k) h += make_rational(1, k);
  return h;
}

Rational quintic_coefficient(long m) {
  return Rational(factorial(5 * m)) / Rational(factorial(m) * factorial(m) * factorial(m) * factorial(m) * factorial(m));
}

// Sym^n of d^2 + a d + b via L_(i+1) = (d + i a) L_i + i (n - i + 1) b L_(i-1)
DOperator sym_power_recursion(const DOperator& P, unsigned n) {
  const DOperator m = P.monic();
  const RatFunc a = m[1], b = m[0];
  DOperator prev = DOperator::scalar(RatFunc(1));
  DOperator cur = DOperator::d();
  for (unsigned i = 1; i <= n; ++i) {
    const RatFunc ia = a * RatFunc(static_cast<long>(i));
    DOperator next = (DOperator({ia, RatFunc(1)}) * cur) +
                     (b * RatFunc(static_cast<long>(i * (n - i + 1)))) * prev;
    prev = cur;
    cur = next;
  }
  return cur.monic();
}

}  // namespace

TEST_CASE("quintic holomorphic period is the factorial ratio") {
  Flag f = mum_flag(corpus_operator("quintic"), 21);
  CHECK(f.mum_exponent == 0);
  REQUIRE(f.f.size() == 4);
  for (long m = 0; m <= 20; ++m) CHECK(f.f[0].coeff(m) == quintic_coefficient(m));
}

TEST_CASE("quintic logarithmic period matches the harmonic formula") {
  // d/d eps of the eps-deformed coefficients gives 5 (H_5m - H_m) A_m
  Flag f = mum_flag(corpus_operator("quintic"), 15);
  CHECK(f.f[1].coeff(0) == 0);
  for (long m = 1; m < 15; ++m) CHECK(f.f[1].coeff(m) == quintic_coefficient(m) * 5 * (harmonic(5 * m) - harmonic(m)));
  CHECK(f.f[1].coeff(1) == 770);
}

TEST_CASE("flag solutions are annihilated") {
  for (const char* name : {"quintic", "E_tilde", "R1", "R3"}) {
    INFO(name);
    const ThetaOperator L = corpus_operator(name);
    Flag f = mum_flag(L, 25);
    REQUIRE(static_cast<long>(f.solutions.size()) == L.order());
    for (const auto& y : f.solutions) CHECK(apply(L, y).is_zero());
  }
}

TEST_CASE("MUM exponent after a shift") {
  // z^2 y for y a quintic period
  const ThetaOperator L = detail::exponent_shift(corpus_operator("quintic"), -2);
  REQUIRE(mum_exponent(L));
  CHECK(*mum_exponent(L) == 2);
  Flag f = mum_flag(L, 12);
  CHECK(f.mum_exponent == 2);
  for (long m = 0; m < 10; ++m) CHECK(f.f[0].coeff(m + 2) == quintic_coefficient(m));
  CHECK(f.f[0].coeff(1) == 0);
}

TEST_CASE("non-MUM operators are rejected") {
  CHECK_FALSE(mum_exponent(corpus_operator("E")));
  CHECK_THROWS_AS(mum_flag(corpus_operator("E"), 10), Error);
  CHECK_FALSE(mum_exponent(parse_theta_operator("T*(T-1) - z")));
}

TEST_CASE("local structure of the quintic") {
  const ThetaOperator Q = corpus_operator("quintic");
  LocalStructure c = local_structure(Q, Point::at(make_rational(1, 3125)));
  REQUIRE(c.classes.size() == 1);
  CHECK(c.classes[0].exponents == std::vector<Rational>{0, 1, 1, 2});
  CHECK(c.classes[0].block_sizes == std::vector<int>{2, 1, 1});
  CHECK(c.has_logs());

  LocalStructure o = local_structure(Q, Point::at(0));
  REQUIRE(o.classes.size() == 1);
  CHECK(o.classes[0].block_sizes == std::vector<int>{4});

  LocalStructure inf = local_structure(Q, Point::at_infinity());
  CHECK(inf.classes.size() == 4);
  CHECK_FALSE(inf.has_logs());

  CHECK_THROWS_AS(local_structure(parse_theta_operator("T^2 - 2 + z"), Point::at(0)), Error);
}

TEST_CASE("class solutions of E at the origin") {
  const ThetaOperator E = corpus_operator("E");
  LocalStructure s = local_structure(E, Point::at(0), 20);
  REQUIRE(s.classes.size() == 2);
  for (const auto& cls : s.classes) {
    REQUIRE(cls.solutions.size() == 1);
    const auto& sol = cls.solutions[0];
    CHECK(sol.g.log_degree() == 0);
    // the shifted operator acting on g
    const ThetaOperator S = detail::exponent_shift(E, sol.exponent);
    CHECK(apply(S, sol.g).truncated_abs(19).is_zero());
  }
}

TEST_CASE("symmetric powers of order two") {
  const DOperator d2({RatFunc(0), RatFunc(0), RatFunc(1)});
  CHECK(sym_power_order2(d2, 2) == DOperator({RatFunc(0), RatFunc(0), RatFunc(0), RatFunc(1)}));
  CHECK(sym_power_order2(d2, 3) == DOperator({RatFunc(0), RatFunc(0), RatFunc(0), RatFunc(0), RatFunc(1)}));
  const DOperator Et = to_d_form(corpus_operator("E_tilde")).monic();
  for (unsigned n = 1; n <= 4; ++n) {
    INFO(n);
    CHECK(sym_power_order2(Et, n).monic() == sym_power_recursion(Et, n));
  }
  // y'' = z y (Airy): Sym^2 by recursion
  const DOperator airy({-RatFunc::z(), RatFunc(0), RatFunc(1)});
  CHECK(sym_power_order2(airy, 2).monic() == sym_power_recursion(airy, 2));
  CHECK(sym_power_order2(airy, 3).monic() == sym_power_recursion(airy, 3));
}

TEST_CASE("minimal operators of series") {
  Series e = Series::zero(20);
  Rational t = 1;
  for (long m = 0; m < 20; ++m) {
    e[static_cast<std::size_t>(m)] = t;
    t /= m + 1;
  }
  CHECK(same_operator(min_operator_of_series({LogSeries(e)}, 3, 2), parse_operator("D - 1")));
  Series g = Series::zero(20);
  for (std::size_t m = 0; m < 20; ++m) g[m] = 1;
  CHECK(same_operator(min_operator_of_series({LogSeries(g)}, 3, 2), parse_operator("(1-z)*D - 1")));
}

TEST_CASE("symmetric square orders") {
  CHECK(sym_square_order(corpus_operator("quintic")) == 10);
  const ThetaOperator S3 = to_theta_form(sym_power_order2(to_d_form(corpus_operator("E_tilde")), 3));
  CHECK(sym_square_order(S3) == 7);
}
