#include <doctest.h>

#include <cmath>

#include "gvforge/errors.hpp"
#include "gvforge/highreal.hpp"

using namespace gvforge;

TEST_CASE("decimal literals parse exactly") {
  CHECK(parse_decimal("0.2901") == Rational(2901, 10000));
  CHECK(parse_decimal("-3") == Rational(-3));
  CHECK(parse_decimal("1.5e-3") == Rational(3, 2000));
  CHECK(parse_decimal("25E2") == Rational(2500));
  CHECK_THROWS_AS(parse_decimal("abc"), ArgumentError);
  CHECK_THROWS_AS(parse_decimal("1.2.3"), ArgumentError);
  CHECK_THROWS_AS(parse_decimal("1e"), ArgumentError);
}

TEST_CASE("arithmetic encloses the exact value") {
  const HighReal third = HighReal(1L) / HighReal(3L);
  CHECK(third.contains(HighReal(Rational(1, 3))));
  CHECK_FALSE(third.is_point());
  CHECK(third.width() < 1e-37);

  const HighReal back = third * HighReal(3L);
  CHECK(back.contains(HighReal(1L)));

  const HighReal diff = third - third;
  CHECK(diff.contains_zero());

  CHECK_THROWS_AS(HighReal(1L) / HighReal::hull(HighReal(-1L), HighReal(1L)), DomainError);
  CHECK_THROWS_AS(log(HighReal(0L)), DomainError);
}

TEST_CASE("interval products take all endpoint combinations") {
  const HighReal a = HighReal::hull(HighReal(-2L), HighReal(3L));
  const HighReal b = HighReal::hull(HighReal(-5L), HighReal(4L));
  const HighReal p = a * b;
  CHECK(p.lower() == -15.0);
  CHECK(p.upper() == 12.0);
  const HighReal s = square(a);
  CHECK(s.lower() == 0.0);
  CHECK(s.upper() == 9.0);
}

TEST_CASE("elementary functions at known points") {
  CHECK(exp(log(HighReal(7L))).contains(HighReal(7L)));
  CHECK(sqrt(HighReal(2L)).contains(HighReal::from_decimal("1.41421356237309504880168872420969807")) == false);
  const HighReal r2 = sqrt(HighReal(2L));
  CHECK(std::fabs(r2.mid() - std::sqrt(2.0)) < 1e-15);
  CHECK(square(r2).contains(HighReal(2L)));
  CHECK(cbrt(HighReal(27L)).contains(HighReal(3L)));
  CHECK(pow(HighReal(2L), HighReal(10L)).contains(HighReal(1024L)));
}

TEST_CASE("certified comparisons report overlap as indeterminate") {
  const HighReal one_third = HighReal(1L) / HighReal(3L);
  CHECK(certify_less(one_third, HighReal::from_decimal("0.3334")) == Verdict::pass);
  CHECK(certify_less(one_third, HighReal::from_decimal("0.3333")) == Verdict::fail);
  CHECK(certify_less(one_third, one_third) == Verdict::indeterminate);
  CHECK(certify_less_equal(HighReal(1L), HighReal(1L)) == Verdict::pass);
  CHECK(certify_less(HighReal(1L), HighReal(1L)) == Verdict::fail);
}

TEST_CASE("floor and ceil are exact only when the enclosure agrees") {
  CHECK(*HighReal::from_decimal("2.5").floor_exact() == 2);
  CHECK(*HighReal::from_decimal("2.5").ceil_exact() == 3);
  CHECK_FALSE(HighReal::hull(HighReal(1L), HighReal(2L)).floor_exact().has_value());
}

TEST_CASE("precision scope changes new values only") {
  const HighReal coarse = [] {
    HighReal::PrecisionScope scope(64);
    return HighReal(1L) / HighReal(3L);
  }();
  const HighReal fine = HighReal(1L) / HighReal(3L);
  CHECK(coarse.width() > fine.width());
  CHECK(HighReal::precision() == HighReal::kDefaultPrecision);
}
