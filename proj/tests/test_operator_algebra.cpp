#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cyops/cyops.hpp"

using namespace cyops;

namespace {

Poly linear_in_t(long a, long b) { return Poly({Rational(b), Rational(a)}); }  // a T + b

ThetaOperator quintic_by_hand() {
  Poly p1({Rational(-5)});
  for (long j = 1; j <= 4; ++j) p1 = p1 * linear_in_t(5, j);
  return ThetaOperator({Poly::monomial(1, 4), p1});
}

DOperator random_d_operator(std::mt19937& rng, long max_order) {
  std::uniform_int_distribution<long> coef(-3, 3), order(1, max_order);
  const long n = order(rng);
  std::vector<RatFunc> c;
  for (long i = 0; i <= n; ++i) c.emplace_back(Poly({Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng))}));
  if (c.back().is_zero()) c.back() = RatFunc(1);
  return DOperator(std::move(c));
}

Series exp_of(const Rational& lambda, unsigned h, std::size_t prec) {
  // exp(lambda z^h) from its Taylor coefficients
  Series s = Series::zero(prec);
  Rational term = 1;
  for (std::size_t k = 0; k * h < prec; ++k) {
    s[k * h] = term;
    term = term * lambda / Rational(static_cast<long>(k + 1));
  }
  return s;
}

}  // namespace

TEST_CASE("parser builds D and theta forms") {
  const DOperator Dz = parse_operator("D*z");
  CHECK(Dz == DOperator({RatFunc(1), RatFunc::z()}));
  const ThetaOperator t = parse_theta_operator("T^2 - T");
  CHECK(t == ThetaOperator({Poly({Rational(0), Rational(-1), Rational(1)})}));
  CHECK(parse_theta_operator("T") == ThetaOperator::theta());
  CHECK(parse_operator("z*D") == to_d_form(ThetaOperator::theta()));
  CHECK(parse_theta_operator("(z*D)^2") == parse_theta_operator("T^2"));
  CHECK(parse_operator("D^2 - 1/4") == DOperator({RatFunc(make_rational(-1, 4)), RatFunc(0), RatFunc(1)}));
  CHECK(parse_operator("-D + z") == DOperator({RatFunc::z(), RatFunc(-1)}));
}

TEST_CASE("parser agrees with the hand-built quintic") {
  CHECK(same_operator(parse_theta_operator("T^4 - 5*z*(5*T+1)*(5*T+2)*(5*T+3)*(5*T+4)"), quintic_by_hand()));
  CHECK(same_operator(corpus_operator("quintic"), quintic_by_hand()));
  CHECK(same_operator(parse_theta_operator("T^4 - 3125*z*(T+1/5)*(T+2/5)*(T+3/5)*(T+4/5)"), quintic_by_hand()));
}

TEST_CASE("parse errors carry position and expectations") {
  try {
    parse_operator("T^2 + z*");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 8);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse_operator("T^"), ParseError);
  CHECK_THROWS_AS(parse_operator("(T+1"), ParseError);
  CHECK_THROWS_AS(parse_operator("T $ 2"), ParseError);
  CHECK_THROWS_AS(parse_operator("1/0"), Error);
}

TEST_CASE("theta and D forms round trip on the corpus") {
  for (const auto& e : corpus_entries()) {
    INFO(e.name);
    const ThetaOperator L = parse_theta_operator(e.expression);
    CHECK(to_theta_form(to_d_form(L)) == L);
    CHECK(same_operator(parse_theta_operator(render(L)), L));
  }
}

TEST_CASE("theta-form multiplication matches D-form composition") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> c(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    auto rnd = [&] {
      return ThetaOperator({Poly({Rational(c(rng)), Rational(c(rng))}), Poly({Rational(c(rng)), Rational(1)})});
    };
    const ThetaOperator a = rnd(), b = rnd();
    CHECK(to_d_form(a * b) == to_d_form(a) * to_d_form(b));
  }
}

TEST_CASE("dual is an involution and reverses products") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const DOperator P = random_d_operator(rng, 3), Q = random_d_operator(rng, 2);
    CHECK(dual(dual(P)) == P);
    CHECK(dual(P * Q) == dual(Q) * dual(P));
  }
  // sign fixed so the leading coefficient is kept: d stays d, z d becomes d z
  CHECK(dual(DOperator::d()) == DOperator::d());
  CHECK(dual(parse_operator("z*D")) == parse_operator("D*z"));
  CHECK(dual(DOperator::scalar(RatFunc::z())) == DOperator::scalar(RatFunc::z()));
}

TEST_CASE("adjoint in theta form matches the D form") {
  for (const char* name : {"quintic", "E_tilde", "R1"}) {
    const ThetaOperator L = corpus_operator(name);
    CHECK(to_d_form(adjoint(L)) == adjoint(to_d_form(L)));
  }
}

TEST_CASE("apply annihilates known solutions") {
  // theta - z kills exp(z); (1 - z) D - 1 kills 1/(1 - z)
  const ThetaOperator L = parse_theta_operator("T - z");
  CHECK(apply(L, exp_of(1, 1, 20)).is_zero());
  const DOperator M = parse_operator("(1-z)*D - 1");
  Series geo = Series::zero(20);
  for (std::size_t m = 0; m < 20; ++m) geo[m] = 1;
  CHECK(apply(M, LogSeries(geo)).truncated_abs(19).is_zero());
  CHECK_FALSE(apply(L, geo).is_zero());
}

TEST_CASE("self-duality witnesses") {
  const DOperator Q = to_d_form(corpus_operator("quintic")).monic();
  auto a = self_dual_witness(Q);
  REQUIRE(a);
  // alpha = 1/(z^3 (z - 1/3125)) up to a constant
  const RatFunc expected(Poly(Rational(1)), Poly::monomial(1, 3) * Poly::linear(make_rational(1, 3125)));
  CHECK(*a == expected);
  CHECK(verify_self_dual(Q, expected));
  CHECK_FALSE(verify_self_dual(Q, RatFunc(1)));

  // y'' + y'/(2z): residue of the weight is -1/2
  const DOperator half({RatFunc(0), RatFunc(Poly(make_rational(1, 2)), Poly::x()), RatFunc(1)});
  SelfDualSearch s = find_self_dual_witness(half);
  CHECK_FALSE(s.alpha);
  CHECK(s.nonintegral_residue);
  CHECK_THROWS_AS(self_dual_witness(half), Error);

  // y''' + z y: odd order with a_(n-1) = 0 but not self-dual
  const DOperator odd({RatFunc::z(), RatFunc(1), RatFunc(0), RatFunc(1)});
  CHECK_FALSE(find_self_dual_witness(odd).alpha);
}

TEST_CASE("indicial data and singular points") {
  const ThetaOperator Q = corpus_operator("quintic");
  SingularPoints sp = singular_points(Q);
  REQUIRE(sp.points.size() == 3);
  CHECK(sp.points[0] == Point::at(0));
  CHECK(sp.points[1] == Point::at(make_rational(1, 3125)));
  CHECK(sp.points[2].infinity);
  CHECK(sp.residual.degree() <= 0);

  CHECK(indicial(Q, Point::at(0)).exponents() == std::vector<Rational>(4, Rational(0)));
  CHECK(indicial(Q, Point::at(make_rational(1, 3125))).exponents() ==
        std::vector<Rational>{0, 1, 1, 2});
  CHECK(indicial(Q, Point::at_infinity()).exponents() ==
        std::vector<Rational>{make_rational(1, 5), make_rational(2, 5), make_rational(3, 5), make_rational(4, 5)});

  // exponents +-1/6 at the origin of E, solved by hand from T^2 - 1/36
  const ThetaOperator E = corpus_operator("E");
  CHECK(indicial(E, Point::at(0)).exponents() == std::vector<Rational>{make_rational(-1, 6), make_rational(1, 6)});

  // irrational roots are kept in the residual factor
  IndicialData irr = indicial(parse_theta_operator("T^2 - 2 + z"), Point::at(0));
  CHECK_FALSE(irr.all_rational());
  CHECK(irr.residual_factor.degree() == 2);
}

TEST_CASE("irregular points are rejected") {
  CHECK_THROWS_MATCHES(indicial(parse_theta_operator("T - z"), Point::at_infinity()), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::IrregularSingularity; }));
}

TEST_CASE("pullbacks and twists") {
  const ThetaOperator L = parse_theta_operator("T - z");
  for (long h = 1; h <= 3; ++h)
    for (long lam : {2L, -3L}) {
      const ThetaOperator P = pullback_monomial(L, Rational(lam), static_cast<unsigned>(h));
      CHECK(apply(P, exp_of(Rational(lam), static_cast<unsigned>(h), 30)).is_zero());
    }
  CHECK_THROWS_AS(pullback_monomial(L, 0, 1), Error);

  // d twisted by u = 1 kills exp(z)
  const DOperator T = twist(DOperator::d(), RatFunc(1));
  CHECK(T == DOperator({RatFunc(-1), RatFunc(1)}));
  CHECK(apply(T, LogSeries(exp_of(1, 1, 20))).truncated_abs(19).is_zero());
  // twisting back undoes it
  const DOperator Q = to_d_form(corpus_operator("quintic")).monic();
  const RatFunc u(Poly({Rational(1), Rational(2)}), Poly({Rational(1), Rational(-1)}));
  CHECK(twist(twist(Q, u), -u) == Q);

  // inversion is an involution up to normalization
  const ThetaOperator R = corpus_operator("R2");
  CHECK(same_operator(pullback_inversion(pullback_inversion(R)), R));
}

TEST_CASE("E pulls back to E_tilde under inversion") {
  const ThetaOperator E = corpus_operator("E"), Et = corpus_operator("E_tilde");
  CHECK(same_operator(pullback_inversion(E), Et));
}
