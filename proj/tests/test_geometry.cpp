#include <cmath>

#include "doctest.h"
#include "moserlp/errors.hpp"
#include "moserlp/point.hpp"
#include "support/fixtures.hpp"

using namespace moser;

TEST_CASE("exact distances on the 23-point configuration") {
  PointSet X = testsupport::x23();
  REQUIRE(X.size() == 23);
  // x1 = 0, x2 = 1
  CHECK(dist_sq(X.epoint(0), X.epoint(1)) == FieldElement(Rational(1)));
  // x4 = 3/2 + (sqrt3/2) i, so |x1 - x4|^2 = 9/4 + 3/4 = 3
  CHECK(dist_sq(X.epoint(0), X.epoint(3)) == FieldElement(Rational(3)));
  CHECK(dist_sq(X.epoint(4), X.epoint(4)) == FieldElement());
  CHECK(distinct_distances(X) == 27);
}

TEST_CASE("distinct distances on small sets") {
  PointSet spindle = testsupport::spindle();
  CHECK(distinct_distances(spindle) == 7);

  // unit equilateral triangle: one distinct distance
  ExactPoint a{FieldElement(), FieldElement()};
  ExactPoint b{FieldElement(Rational(1)), FieldElement()};
  ExactPoint c{FieldElement(Rational(1, 2)), FieldElement(Rational(0), Rational(1, 2), Rational(0), Rational(0))};
  PointSet tri = PointSet::exact({a, b, c});
  CHECK(distinct_distances(tri) == 1);
}

TEST_CASE("point set validation") {
  ExactPoint a{FieldElement(Rational(2)), FieldElement()};
  CHECK_THROWS_AS(PointSet::exact({a, a}), ValidationError);
  CHECK_THROWS_AS(PointSet::floating({{0, 0}, {1e-7, 0}}), ValidationError);
  CHECK_THROWS_AS(PointSet::floating({{0, 0}, {std::nan(""), 0}}), ValidationError);
  CHECK_NOTHROW(PointSet::floating({{0, 0}, {1, 0}}));
}

TEST_CASE("to_float tracks exact coordinates closely") {
  PointSet X = testsupport::x23();
  PointSet F = X.to_float();
  REQUIRE(F.size() == X.size());
  for (int i = 0; i < X.size(); ++i) {
    Enclosure re = X.epoint(i).re.to_enclosure(1e-25);
    Enclosure im = X.epoint(i).im.to_enclosure(1e-25);
    CHECK(F.fpoint(i).x == doctest::Approx(re.mid()).epsilon(1e-14));
    CHECK(F.fpoint(i).y == doctest::Approx(im.mid()).epsilon(1e-14));
  }
  // unit edges stay unit to double accuracy
  CHECK(dist_sq(F.fpoint(0), F.fpoint(1)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("complex point algebra") {
  ExactPoint i{FieldElement(), FieldElement(Rational(1))};
  CHECK(i * i == ExactPoint{FieldElement(Rational(-1)), FieldElement()});
  ExactPoint z{FieldElement(Rational(3)), FieldElement(Rational(4))};
  CHECK(z.norm_sq() == FieldElement(Rational(25)));
  CHECK(z * z.inverse() == ExactPoint{FieldElement(Rational(1)), FieldElement()});
  CHECK(z.conj().norm_sq() == z.norm_sq());
}

TEST_CASE("mixed mode distance queries fail loudly") {
  PointSet F = PointSet::floating({{0, 0}, {1, 0}});
  CHECK_THROWS_AS(F.dist_sq_exact(0, 1), UsageError);
  CHECK_THROWS_AS(distinct_distances(F), UsageError);
}
