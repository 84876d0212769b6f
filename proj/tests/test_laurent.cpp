#include <doctest.h>

#include <random>

#include "kh/error.hpp"
#include "kh/laurent.hpp"

using namespace kh;

namespace {

LaurentPoly q(std::int64_t k, std::int64_t c = 1) { return LaurentPoly::monomial('q', 1, k, c); }
LaurentPoly t2(std::int64_t k, std::int64_t c = 1) { return LaurentPoly::monomial('t', 2, k, c); }

LaurentPoly random_poly(std::mt19937_64& rng, char var, int unit) {
  std::uniform_int_distribution<int> exp(-6, 6), coef(-4, 4), len(1, 5);
  LaurentPoly p(var, unit);
  const int n = len(rng);
  for (int i = 0; i < n; ++i) p.add_term(exp(rng), coef(rng));
  if (p.is_zero()) p.add_term(0, 1);
  return p;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Overflow;
}

}  // namespace

TEST_CASE("mdeg") {
  CHECK(mdeg(LaurentPoly::constant('t', 2, 1)) == Rational(0));
  CHECK(mdeg(t2(-2) + t2(-6) - t2(-8)) == Rational(-1));
  CHECK(mdeg(t2(3) - t2(1)) == Rational(3, 2));
  CHECK(code_of([] { mdeg(LaurentPoly('t', 2)); }) == Errc::ZeroPolynomial);
}

TEST_CASE("exact division") {
  const auto d = q(1) + q(-1);
  CHECK(exact_divide(d, d) == q(0));
  CHECK(exact_divide(q(-1) + q(-3) + q(-5) - q(-9), d) == q(-2) + q(-6) - q(-8));
  CHECK(exact_divide(q(2) + q(0), d) == q(1));
  CHECK(code_of([&] { exact_divide(q(2) + q(0, 2), d); }) == Errc::InexactDivision);
  CHECK(code_of([&] { exact_divide(d, LaurentPoly('q', 1)); }) == Errc::InexactDivision);
}

TEST_CASE("substitutions") {
  const auto one_a = LaurentPoly::constant('A', 1, 1);
  const auto one_t = LaurentPoly::constant('t', 4, 1);
  CHECK(substitute(one_a, Substitution::AToTQuarter) == one_t);
  CHECK(substitute(LaurentPoly::monomial('A', 1, 3, -1), Substitution::AToTQuarter) ==
        LaurentPoly::monomial('t', 4, -3, -1));
  CHECK(substitute(q(-2) + q(-6) - q(-8), Substitution::QToMinusTHalf) == t2(-2) + t2(-6) - t2(-8));
  CHECK(substitute(q(1), Substitution::QToMinusTHalf) == t2(1, -1));
}

TEST_CASE("rendering and parsing") {
  const auto v = t2(-2) + t2(-6) - t2(-8);
  CHECK(v.str() == "t^(-1) + t^(-3) - t^(-4)");
  CHECK((t2(3) - t2(1)).str() == "t^(3/2) - t^(1/2)");
  CHECK(t2(2, 2).str() == "2*t");
  CHECK(LaurentPoly('t', 2).str() == "0");
  CHECK(parse_laurent(v.str(), 't', 2) == v);
  CHECK(parse_laurent("-t^(4) + t^(3) + t", 't', 2) == t2(8, -1) + t2(6) + t2(2));
  CHECK(parse_laurent("0", 't', 2).is_zero());
}

TEST_CASE("units and variables must match") {
  CHECK(code_of([] { auto r = q(1) + t2(1); (void)r; }) == Errc::UnitMismatch);
  CHECK(code_of([] { auto r = t2(1).with_unit(1); (void)r; }) == Errc::UnitMismatch);
  CHECK(t2(2).with_unit(1) == LaurentPoly::monomial('t', 1, 1));
  CHECK(t2(1).with_unit(4) == LaurentPoly::monomial('t', 4, 2));
}

TEST_CASE("property: ring laws") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_poly(rng, 'q', 1), b = random_poly(rng, 'q', 1), c = random_poly(rng, 'q', 1);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    CHECK(mdeg(a * b) == mdeg(a) + mdeg(b));
    CHECK(exact_divide(a * b, b) == a);
    CHECK(substitute(a * b, Substitution::QToMinusTHalf) ==
          substitute(a, Substitution::QToMinusTHalf) * substitute(b, Substitution::QToMinusTHalf));
    const auto x = random_poly(rng, 'A', 1), y = random_poly(rng, 'A', 1);
    CHECK(substitute(x * y, Substitution::AToTQuarter) ==
          substitute(x, Substitution::AToTQuarter) * substitute(y, Substitution::AToTQuarter));
    CHECK(parse_laurent(a.str(), 'q', 1) == a);
  }
}

TEST_CASE("coefficient overflow is reported") {
  const auto big = q(0, std::int64_t{1} << 62);
  CHECK(code_of([&] { auto r = big + big; (void)r; }) == Errc::Overflow);
}
