#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "moserlp/errors.hpp"
#include "moserlp/symbolize.hpp"
#include "support/fixtures.hpp"

using namespace moser;

namespace {

ExactPoint ep(Rational re_r, Rational im_r) {
  return ExactPoint{FieldElement(re_r), FieldElement(im_r)};
}

const FieldElement kHalf{Rational(1, 2)};
const FieldElement kRoot3Half{Rational(0), Rational(1, 2), Rational(0), Rational(0)};

BirthOrder x23_order() {
  BirthOrder o;
  auto X = testsupport::x23();
  for (int i = 0; i < 7; ++i) o.seed.push_back(X.epoint(i));
  o.anchors = {{3, 4},  {0, 7},  {4, 7},  {3, 5},   {1, 9},   {4, 9},
               {7, 11}, {9, 11}, {5, 9},  {9, 11},  {4, 11},  {1, 6},
               {1, 18}, {10, 16}, {12, 16}, {16, 21}};
  return o;
}

}  // namespace

TEST_CASE("triangle apex is recovered by the apex rule") {
  BirthOrder o;
  o.seed = {ep(Rational(0), Rational(0)), ep(Rational(1), Rational(0))};
  o.anchors = {{0, 1}};
  auto flo = PointSet::floating({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  auto r = symbolize(flo, o);
  REQUIRE(r.rules == std::vector<int>{0, 0, 2});
  CHECK(r.tower.levels() == 0);
  auto X = base_field_points(r);
  CHECK(X.epoint(2) == ExactPoint{kHalf, kRoot3Half});

  auto flipped = PointSet::floating({{0, 0}, {1, 0}, {0.5, -std::sqrt(3.0) / 2}});
  auto r2 = symbolize(flipped, o);
  auto lower = ExactPoint{kHalf, -kRoot3Half};
  CHECK(base_field_points(r2).epoint(2) == lower);
}

TEST_CASE("parallelogram completion wins without extending the tower") {
  BirthOrder o;
  o.seed = {ep(Rational(0), Rational(0)), ep(Rational(1), Rational(0))};
  o.anchors = {{0, 1}, {1, 2}};
  double apx = 0.5, apy = std::sqrt(3.0) / 2;
  auto flo = PointSet::floating({{0, 0}, {1, 0}, {apx, apy}, {1 + apx, apy}});
  auto r = symbolize(flo, o);
  REQUIRE(r.rules == std::vector<int>{0, 0, 2, 1});
  CHECK(r.tower.levels() == 0);
  auto X = base_field_points(r);
  auto expect = ExactPoint{FieldElement(Rational(3, 2)), kRoot3Half};
  CHECK(X.epoint(3) == expect);
}

TEST_CASE("circle intersection extends the tower when it must") {
  BirthOrder o;
  o.seed = {ep(Rational(0), Rational(0)), ep(Rational(1, 2), Rational(0))};
  o.anchors = {{0, 1}};
  double iy = std::sqrt(15.0) / 4;
  auto flo = PointSet::floating({{0, 0}, {0.5, 0}, {0.25, iy}});
  auto r = symbolize(flo, o);
  REQUIRE(r.rules == std::vector<int>{0, 0, 3});
  CHECK(r.tower.levels() == 1);
  CHECK(r.tower.to_double(r.points[2].re) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r.tower.to_double(r.points[2].im) == doctest::Approx(iy).epsilon(1e-14));
  CHECK_THROWS_AS(base_field_points(r), ValidationError);
}

TEST_CASE("the full 23-point witness reconstructs exactly") {
  auto X = testsupport::x23();
  auto o = x23_order();
  auto r = symbolize(X.to_float(), o);
  REQUIRE(static_cast<int>(r.points.size()) == X.size());
  CHECK(r.tower.levels() == 0);
  int apex_uses = 0, circle_uses = 0;
  for (int rule : r.rules) {
    if (rule == 2) ++apex_uses;
    if (rule == 3) ++circle_uses;
  }
  CHECK(apex_uses == 1);
  CHECK(circle_uses == 0);
  auto Y = base_field_points(r);
  REQUIRE(Y.size() == X.size());
  for (int i = 0; i < X.size(); ++i) CHECK(Y.epoint(i) == X.epoint(i));
}

TEST_CASE("bundled numeric and order fixtures reproduce the witness") {
  auto flo = load_point_set(testsupport::data_file("x23-float.pts"));
  auto o = load_order(testsupport::data_file("x23-order.txt"));
  auto r = symbolize(flo.points, o);
  auto Y = base_field_points(r);
  auto X = testsupport::x23();
  REQUIRE(Y.size() == X.size());
  for (int i = 0; i < X.size(); ++i) CHECK(Y.epoint(i) == X.epoint(i));
}

TEST_CASE("reconstruction refuses a point no rule reaches") {
  BirthOrder o;
  o.seed = {ep(Rational(0), Rational(0)), ep(Rational(1), Rational(0))};
  o.anchors = {{0, 1}};
  auto flo = PointSet::floating({{0, 0}, {1, 0}, {0.5, 0.3}});
  CHECK_THROWS_WITH_AS(symbolize(flo, o),
                       "no reconstruction rule applies to point 3", ValidationError);

  BirthOrder far;
  far.seed = {ep(Rational(0), Rational(0)), ep(Rational(5, 2), Rational(0))};
  far.anchors = {{0, 1}};
  auto flo2 = PointSet::floating({{0, 0}, {2.5, 0}, {1.25, 0.9}});
  CHECK_THROWS_AS(symbolize(flo2, far), ValidationError);
}

TEST_CASE("exact validation catches a near-unit impostor") {
  BirthOrder o;
  o.seed = {ep(Rational(0), Rational(0)),
            ep(Rational(1) + Rational(1, 1000000000), Rational(0))};
  o.anchors = {{0, 1}};
  double bx = 1.0 + 1e-9;
  double apy = std::sqrt(3.0) / 2 * bx;
  auto flo = PointSet::floating({{0, 0}, {bx, 0}, {bx / 2, apy}});
  CHECK_THROWS_WITH_AS(
      symbolize(flo, o),
      "reconstructed point 3 is not at unit distance from anchor 1", ValidationError);
}

TEST_CASE("symbolize validates its inputs") {
  BirthOrder o;
  o.seed = {ep(Rational(0), Rational(0)), ep(Rational(1), Rational(0))};
  CHECK_THROWS_AS(symbolize(testsupport::spindle(), o), UsageError);
  CHECK_THROWS_AS(symbolize(PointSet::floating({{0, 0}}), o), UsageError);
  auto off = PointSet::floating({{0, 0}, {1.00001, 0}});
  CHECK_THROWS_AS(symbolize(off, o), ValidationError);
  BirthOrder empty;
  empty.anchors = {{0, 1}};
  CHECK_THROWS_AS(symbolize(PointSet::floating({{0, 0}}), empty), UsageError);
}

TEST_CASE("order files round-trip byte for byte") {
  auto o = x23_order();
  std::ostringstream os;
  print_order(o, os);
  std::istringstream is(os.str());
  auto back = parse_order(is);
  REQUIRE(back.seed.size() == o.seed.size());
  for (size_t i = 0; i < o.seed.size(); ++i) CHECK(back.seed[i] == o.seed[i]);
  CHECK(back.anchors == o.anchors);
  std::ostringstream os2;
  print_order(back, os2);
  CHECK(os2.str() == os.str());
}

TEST_CASE("order parser rejects malformed input") {
  auto reject_usage = [](const std::string& text) {
    std::istringstream is(text);
    CHECK_THROWS_AS(parse_order(is), UsageError);
  };
  reject_usage("");
  reject_usage("seed 0\nbirths 0\n");
  reject_usage("seed one\n");
  reject_usage("seed 1\n0 0 0 0 0 0 0\nbirths 0\n");
  reject_usage("seed 1\n0 0 0 0 0 0 0 x\nbirths 0\n");
  reject_usage("seed 1\n0 0 0 0 0 0 0 0\n");
  reject_usage("seed 1\n0 0 0 0 0 0 0 0\nbirths 1\n1\n");
  reject_usage("seed 1\n0 0 0 0 0 0 0 0\nbirths 1\n0 1\n");
  reject_usage("seed 1\n0 0 0 0 0 0 0 0\nbirths 0\nextra\n");

  std::string later = "seed 2\n0 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0\nbirths 1\n1 3\n";
  std::istringstream is(later);
  CHECK_THROWS_AS(parse_order(is), ValidationError);
  std::string dup = "seed 2\n0 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0\nbirths 1\n2 2\n";
  std::istringstream is2(dup);
  CHECK_THROWS_AS(parse_order(is2), ValidationError);

  std::string ok =
      "# comment\nseed 2\n0 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0\nbirths 1\n1 2\n";
  std::istringstream is3(ok);
  auto o = parse_order(is3);
  CHECK(o.seed.size() == 2);
  CHECK(o.anchors == std::vector<std::pair<int, int>>{{0, 1}});
}
