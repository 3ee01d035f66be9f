#include <algorithm>
#include <random>

#include "doctest.h"
#include "moserlp/congruence.hpp"
#include "moserlp/errors.hpp"
#include "support/fixtures.hpp"

using namespace moser;

TEST_CASE("congruent basics") {
  PointSet X = testsupport::spindle();
  std::vector<int> I = {0, 1, 2};
  auto self = congruent(X, I, I);
  REQUIRE(self);
  REQUIRE(self->exact);
  // identity witness
  CHECK(self->exact->u == (ExactPoint{FieldElement(Rational(1)), FieldElement()}));
  CHECK(self->exact->v.is_zero());
  CHECK(!self->exact->reflect);

  CHECK_THROWS_AS(congruent(X, {0, 1}, {0}), UsageError);
}

TEST_CASE("segment congruence with a rotation") {
  ExactPoint o{FieldElement(), FieldElement()};
  ExactPoint e1{FieldElement(Rational(1)), FieldElement()};
  ExactPoint w1{FieldElement(Rational(-1)), FieldElement()};
  PointSet X = PointSet::exact({o, e1, w1});
  auto iso = congruent(X, {0, 1}, {0, 2});
  REQUIRE(iso);
  // some unit rotation/translation maps {0,1} onto {0,-1}; verify by image
  for (int i : {0, 1}) {
    ExactPoint img = iso->exact->apply(X.epoint(i));
    CHECK((img == o || img == w1));
  }
  CHECK(iso->exact->u.norm_sq() == FieldElement(Rational(1)));
}

TEST_CASE("unit triangles in the spindle are congruent") {
  PointSet X = testsupport::spindle();
  // triangles (1,2,3) and (5,6,7) in 1-based labels
  auto iso = congruent(X, {0, 1, 2}, {4, 5, 6});
  REQUIRE(iso);
  REQUIRE(iso->exact);
  // witness maps the whole subset onto the target set
  std::vector<ExactPoint> img;
  for (int i : {0, 1, 2}) img.push_back(iso->exact->apply(X.epoint(i)));
  for (int j : {4, 5, 6}) {
    bool found = false;
    for (const auto& p : img) found = found || p == X.epoint(j);
    CHECK(found);
  }
}

TEST_CASE("congruence respects the distance multiset") {
  PointSet X = testsupport::x23();
  // (1,2) is a unit pair; (1,4) has squared distance 3: not congruent
  CHECK(!congruent(X, {0, 1}, {0, 3}));
}

TEST_CASE("congruence is symmetric and transitive on spindle triples") {
  PointSet X = testsupport::spindle();
  std::vector<std::vector<int>> triples;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int c = b + 1; c < 7; ++c) triples.push_back({a, b, c});
  std::mt19937 rng(7);
  for (int round = 0; round < 60; ++round) {
    const auto& A = triples[rng() % triples.size()];
    const auto& B = triples[rng() % triples.size()];
    const auto& C = triples[rng() % triples.size()];
    bool ab = congruent(X, A, B).has_value();
    bool ba = congruent(X, B, A).has_value();
    CHECK(ab == ba);
    if (ab && congruent(X, B, C)) CHECK(congruent(X, A, C).has_value());
  }
}

TEST_CASE("float congruence agrees with exact congruence") {
  PointSet X = testsupport::spindle();
  PointSet F = X.to_float();
  for (auto [I, J] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
           {{0, 1, 2}, {4, 5, 6}}, {{0, 1, 2}, {1, 2, 3}}, {{0, 1}, {4, 5}}}) {
    bool e = congruent(X, I, J).has_value();
    auto f = congruent(F, I, J);
    CHECK(e == f.has_value());
    if (f) {
      REQUIRE(f->floating);
      CHECK(std::abs(std::norm(f->floating->u) - 1.0) <= 1e-9);
      std::vector<bool> used(J.size(), false);
      for (int i : I) {
        auto img = f->floating->apply(F.fpoint(i).c());
        bool hit = false;
        for (size_t t = 0; t < J.size(); ++t) {
          if (!used[t] && std::abs(img - F.fpoint(J[t]).c()) <= 1e-9) {
            used[t] = true;
            hit = true;
            break;
          }
        }
        CHECK(hit);
      }
    }
  }
}

TEST_CASE("chain form emits m-1 pairs per class") {
  // unit equilateral triangle: three segments, all congruent -> 2 pairs
  ExactPoint a{FieldElement(), FieldElement()};
  ExactPoint b{FieldElement(Rational(1)), FieldElement()};
  ExactPoint c{FieldElement(Rational(1, 2)),
               FieldElement(Rational(0), Rational(1, 2), Rational(0), Rational(0))};
  PointSet tri = PointSet::exact({a, b, c});
  UnitDistanceGraph G = build_udg(tri);
  auto pairs = congruence_pairs(tri, 2, 2, false, G);
  CHECK(pairs.size() == 2);
  for (const auto& p : pairs) CHECK(p.a.size() == 2);

  // all distances distinct -> no pairs
  ExactPoint d{FieldElement(Rational(10)), FieldElement()};
  ExactPoint e{FieldElement(Rational(21)), FieldElement()};
  PointSet line = PointSet::exact({a, b, d, e});
  UnitDistanceGraph GL = build_udg(line);
  CHECK(congruence_pairs(line, 2, 2, false, GL).empty());
}

TEST_CASE("x23 class counts at sizes 3 and 4") {
  PointSet X = testsupport::x23();
  UnitDistanceGraph G = build_udg(X);
  auto p3 = congruence_pairs(X, 3, 3, true, G);
  CHECK(p3.size() == 668);
  auto p4 = congruence_pairs(X, 4, 4, true, G);
  CHECK(p4.size() == 871);
  auto all = congruence_pairs(X, 3, 4, true, G);
  CHECK(all.size() == 1539);
  // chain members are valid index lists
  for (const auto& pr : all) {
    CHECK(pr.a.size() == pr.b.size());
    CHECK(std::is_sorted(pr.a.begin(), pr.a.end()));
    CHECK(std::is_sorted(pr.b.begin(), pr.b.end()));
    CHECK(congruent(X, pr.a, pr.b).has_value());
  }
}
