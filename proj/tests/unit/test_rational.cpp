#include "xcov/errors.hpp"
#include "xcov/rational.hpp"
#include "xcov/surd.hpp"

#include <doctest.h>

using namespace xcov;

TEST_SUITE("rational") {
  TEST_CASE("parse_exact reads integers, decimals, exponents and fractions exactly") {
    CHECK(parse_exact("3") == 3);
    CHECK(parse_exact("-2.50") == ExactScalar(-5, 2));
    CHECK(parse_exact("0.4") == ExactScalar(2, 5));
    CHECK(parse_exact("+0.4e-2") == ExactScalar(1, 250));
    CHECK(parse_exact("1/3") == ExactScalar(1, 3));
    CHECK(parse_exact("-6/4") == ExactScalar(-3, 2));
    CHECK(parse_exact("1E3") == 1000);
    CHECK(parse_exact(".5") == ExactScalar(1, 2));
  }

  TEST_CASE("parse_exact rejects malformed text") {
    CHECK_THROWS_AS(parse_exact(""), ParseError);
    CHECK_THROWS_AS(parse_exact("1/0"), ParseError);
    CHECK_THROWS_AS(parse_exact("abc"), ParseError);
    CHECK_THROWS_AS(parse_exact("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_exact("1e"), ParseError);
  }

  TEST_CASE("printing") {
    CHECK(to_fraction_string(ExactScalar(6, 4)) == "3/2");
    CHECK(to_fraction_string(ExactScalar(-4, 2)) == "-2");
    CHECK(format_g12(0.1) == "0.1");
    CHECK(format_g12(1.0 / 3) == "0.333333333333");
    CHECK(format_g12(-0.0) == "0");
    CHECK(to_double(ExactScalar(3, 4)) == 0.75);
  }

  TEST_CASE("ipow and binomial") {
    CHECK(ipow(ExactScalar(2, 3), 3) == ExactScalar(8, 27));
    CHECK(ipow(ExactScalar(0), 0) == 1);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 5) == 0);
  }
}

TEST_SUITE("surd") {
  TEST_CASE("square roots reduce to squarefree radicands") {
    CHECK(Surd::sqrt(4) == Surd(2));
    CHECK(Surd::sqrt(ExactScalar(1, 4)) == Surd(ExactScalar(1, 2)));
    CHECK(Surd::sqrt(8).to_string() == "2*sqrt(2)");
    CHECK(Surd::sqrt(ExactScalar(1, 2)).to_string() == "1/2*sqrt(2)");
    CHECK_THROWS_AS(Surd::sqrt(-1), DomainError);
    CHECK(Surd::sqrt(0).is_zero());
  }

  TEST_CASE("arithmetic in Q[sqrt]") {
    const Surd r2 = Surd::sqrt(2);
    const Surd r3 = Surd::sqrt(3);
    CHECK(r2 * r2 == Surd(2));
    CHECK((r2 * r3) == Surd::sqrt(6));
    CHECK((r2 + 1) * (r2 - 1) == Surd(1));
    CHECK((r2 + r3).to_double() == doctest::Approx(std::sqrt(2.0) + std::sqrt(3.0)));
    CHECK((r2 - r2).is_zero());
    CHECK((-r2 + r2).is_zero());
    CHECK(Surd(ExactScalar(3, 2)).is_rational());
    CHECK_FALSE(r2.is_rational());
    CHECK_THROWS_AS(r2.rational(), DomainError);
    CHECK((Surd(1) + r2).to_string() == "1 + sqrt(2)");
  }
}
