#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oflp/numerics.hpp"

using namespace oflp;

namespace {

Polynomial n_minus(long c) { return Polynomial({Integer(-c), Integer(1)}); }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-5")) == "-5");
  CHECK(to_string(parse_rational("+0/7")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  Rational r = make_rational(4, -6);
  CHECK(r.get_den() > 0);
  CHECK(to_string(r) == "-2/3");
}

TEST_CASE("rational arithmetic is exact") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  for (int i = 0; i < 500; ++i) {
    Rational a = make_rational(num(rng), den(rng));
    Rational b = make_rational(num(rng), den(rng));
    Rational c = make_rational(num(rng), den(rng));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("poly_eval") {
  Polynomial p({0, -1, 1});  // n^2 - n
  CHECK(p.evaluate(5UL) == 20);
  CHECK(Polynomial().evaluate(7UL) == 0);
  CHECK(n_minus(1).evaluate(1UL) == 0);
  Polynomial big = Polynomial::monomial(1, 40);
  CHECK(big.evaluate(2UL) == Integer("1099511627776"));
}

TEST_CASE("polynomial invariants") {
  Polynomial p({1, 2, 0, 0});
  CHECK(p.degree() == 1);
  CHECK(p.coefficients().size() == 2);
  CHECK(Polynomial({0, 0}).is_zero());
  CHECK(Polynomial().degree() == 0);
  CHECK_THROWS_AS(Polynomial().leading(), std::invalid_argument);
  CHECK((p - p).is_zero());
  CHECK(Polynomial({0, -1, 2}).monomial_count() == 2);
  CHECK(Polynomial({3, 1, 2}).without_monomial(2) == Polynomial({3, 1}));
  CHECK(Polynomial({3, 1, 2}).without_monomial(7) == Polynomial({3, 1, 2}));
}

TEST_CASE("polynomial text form") {
  CHECK(Polynomial({3, -1, 2}).to_string() == "2n^2 - n + 3");
  CHECK(Polynomial({3, -1, 2}).to_string(true) == "2n^2-n+3");
  CHECK(Polynomial({0, -1}).to_string() == "-n");
  CHECK(Polynomial().to_string() == "0");
  CHECK(Polynomial({-4}).to_string() == "-4");
  CHECK(Polynomial({1, 0, -1}).to_string() == "-n^2 + 1");
}

TEST_CASE("falling_factorial") {
  CHECK(falling_factorial(2, 0) == Polynomial({0, -1, 1}));
  CHECK(falling_factorial(0, 5) == Polynomial::constant(1));
  CHECK(falling_factorial(1, 2) == n_minus(2));
  // Counts arrangements: n^(w) at n equals n!/(n-w)!, and 0 once w > n.
  CHECK(falling_factorial(3, 0).evaluate(5UL) == 60);
  CHECK(falling_factorial(3, 0).evaluate(2UL) == 0);
  CHECK(falling_factorial(2, 1).evaluate(4UL) == 6);
}

TEST_CASE("falling_factorial multiplicativity") {
  for (unsigned w = 0; w <= 6; ++w)
    for (unsigned u = 0; u <= 6; ++u) {
      CAPTURE(w);
      CAPTURE(u);
      CHECK(falling_factorial(w, 0) * falling_factorial(u, w) == falling_factorial(w + u, 0));
    }
}

TEST_CASE("sign_stability_bound examples") {
  Polynomial p1({2, -1});
  CHECK(sign_stability_bound(p1) == 3);
  CHECK(p1.evaluate(3UL) < 0);
  Polynomial p2({2, -3, 1});
  CHECK(sign_stability_bound(p2) == 4);
  CHECK(p2.evaluate(4UL) > 0);
  CHECK(sign_stability_bound(Polynomial::constant(7)) == 1);
  CHECK_THROWS_AS(sign_stability_bound(Polynomial()), std::invalid_argument);
}

TEST_CASE("sign_stability_bound is sound on random polynomials") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-20, 20), deg(0, 4);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Integer> c(deg(rng) + 1);
    for (auto& v : c) v = coef(rng);
    Polynomial p(c);
    if (p.is_zero()) continue;
    Integer n0 = sign_stability_bound(p);
    const int lead = sgn(p.leading());
    for (unsigned long n = n0.get_ui(); n <= n0.get_ui() + 10; ++n) {
      CAPTURE(p.to_string());
      CHECK(sgn(p.evaluate(n)) == lead);
    }
  }
}

TEST_CASE("rational sign_stability_bound scales first") {
  std::vector<Rational> g{make_rational(1, 2), make_rational(-1, 3)};  // -n/3 + 1/2
  Integer n0 = sign_stability_bound(g);
  CHECK(n0 == 3);
  CHECK(lcm_of_denominators(g) == 6);
}
