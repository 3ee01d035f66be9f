#include <doctest.h>

#include "moserlp/errors.hpp"
#include "moserlp/fcn.hpp"
#include "support/fixtures.hpp"

using namespace moser;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

PointSet unit_triangle() {
  FieldElement half(Rational(1, 2)), zero;
  FieldElement half_sqrt3({Rational(0), Rational(1, 2), Rational(0), Rational(0)});
  return PointSet::exact({{zero, zero}, {FieldElement(Rational(1)), zero}, {half, half_sqrt3}});
}

PointSet unit_edge() {
  FieldElement zero;
  return PointSet::exact({{zero, zero}, {FieldElement(Rational(1)), zero}});
}

PointSet unit_path3() {
  FieldElement zero;
  return PointSet::exact(
      {{zero, zero}, {FieldElement(Rational(1)), zero}, {FieldElement(Rational(2)), zero}});
}

}  // namespace

TEST_CASE("covering optimum on small graphs") {
  auto spindle = build_udg(testsupport::spindle());
  CHECK(fractional_chromatic(spindle, CoverForm::inequality) == q(7, 2));
  CHECK(fractional_chromatic(spindle, CoverForm::equality) == q(7, 2));

  auto k3 = build_udg(unit_triangle());
  CHECK(fractional_chromatic(k3, CoverForm::inequality) == q(3));
  CHECK(fractional_chromatic(k3, CoverForm::equality) == q(3));

  auto k2 = build_udg(unit_edge());
  CHECK(fractional_chromatic(k2, CoverForm::inequality) == q(2));
  CHECK(fractional_chromatic(k2, CoverForm::equality) == q(2));
}

TEST_CASE("bipartite and edgeless graphs") {
  auto p3 = build_udg(unit_path3());
  CHECK(fractional_chromatic(p3, CoverForm::inequality) == q(2));
  CHECK(fractional_chromatic(p3, CoverForm::equality) == q(2));

  // three collinear points with no unit distances
  FieldElement zero;
  auto loose = PointSet::exact({{zero, zero},
                                {FieldElement(Rational(3)), zero},
                                {FieldElement(Rational(6)), zero}});
  auto g = build_udg(loose);
  CHECK(g.edges.empty());
  CHECK(fractional_chromatic(g, CoverForm::inequality) == q(1));
}

TEST_CASE("congruence equalities preserve the triangle optimum") {
  CHECK(geometric_fractional_chromatic(unit_triangle(), 2) == q(3));
  CHECK(geometric_fractional_chromatic(unit_triangle(), 3) == q(3));
}

TEST_CASE("congruence equalities never relax the plain optimum") {
  auto X = testsupport::spindle();
  Rational base = fractional_chromatic(build_udg(X), CoverForm::equality);
  Rational prev = base;
  for (int k = 1; k <= 3; ++k) {
    Rational v = geometric_fractional_chromatic(X, k);
    CHECK(v >= base);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("geometric form rejects float mode and bad sizes") {
  CHECK_THROWS_AS(geometric_fractional_chromatic(testsupport::spindle().to_float(), 2),
                  UsageError);
  CHECK_THROWS_AS(geometric_fractional_chromatic(unit_triangle(), 0), UsageError);
}
