#include <doctest.h>

#include <cmath>
#include <vector>

#include "moserlp/bessel.hpp"
#include "moserlp/certified_min.hpp"
#include "moserlp/errors.hpp"
#include "support/bessel_oracle.hpp"
#include "support/fixtures.hpp"

using namespace moser;

namespace {

// published dual weights for the 23-point configuration
constexpr double kW0 = 0.378583312921677;
constexpr double kW1 = 1.059383649998022;
struct PairWeight {
  int i, j;
  double w;
};
const std::vector<PairWeight> kW2 = {
    {1, 10, 0.014243384098949957},   {1, 17, 0.07397413460039694},
    {1, 23, -0.008047304925038572},  {3, 12, 0.03487012105072677},
    {3, 15, -0.0785963112357179},    {4, 22, 0.00022917246188142716},
    {6, 8, -0.03025769554989927},    {6, 15, 0.018185030147879047},
    {7, 9, -0.17935529642485845},    {7, 12, 0.08006137472171244},
    {7, 15, 0.14034437164315525},    {7, 21, -0.017391357599152},
    {7, 23, 0.09939574113576811},    {8, 22, -0.013665295941013265},
    {8, 23, 0.017535950345541916},   {9, 13, -0.0667237004898899},
    {9, 22, 0.02962214917215127},    {9, 23, -0.1543585559725672},
    {11, 22, -0.050336630381192515}, {11, 23, 0.0395556964778143},
    {12, 19, -0.01728864937672063},  {14, 22, -0.03251305281246628},
    {14, 23, -0.07168501985142882},  {15, 16, 0.009019525024808076},
    {21, 22, -0.08293311685123309},  {21, 23, -0.19185162418622392},
};

WeightedBesselSum x23_dual_sum() {
  auto X = testsupport::x23();
  WeightedBesselSum f;
  f.w0 = kW0;
  f.const_term = kW1;
  for (const auto& [i, j, w] : kW2)
    f.terms.push_back(WeightedBesselSum::Term{w, std::sqrt(X.dist_sq_d(i - 1, j - 1))});
  return f;
}

}  // namespace

TEST_CASE("constant functions are certified exactly") {
  WeightedBesselSum f;
  f.const_term = 0.75;
  auto rep = certified_min(f, 10.0, 0.1);
  CHECK(rep.observed_min == 0.75);
  CHECK(rep.certified_lower == 0.75);
  CHECK(rep.tail_lower == 0.75);
  CHECK(rep.oscillation_budget == 0.0);
  CHECK(rep.lipschitz == 0.0);
}

TEST_CASE("pure J0 recovers its first minimum") {
  WeightedBesselSum f;
  f.w0 = 1.0;
  double true_arg = largest_j1_zero_below(4.0);
  double true_min = testsupport::oracle_j0(true_arg);
  auto rep = certified_min(f, 20.0, 1e-3);
  CHECK(std::fabs(rep.observed_min - true_min) <= 1e-6);
  CHECK(std::fabs(rep.observed_argmin - true_arg) <= 1e-3);
  CHECK(rep.certified_lower <= true_min);
  CHECK(rep.certified_lower >= true_min - 2e-7);
  // T * min(scale, 0.1) = 2 sits before the first J1 zero, so the tail
  // falls back to the unit envelope with the floored budget of 2
  CHECK(rep.tail_lower == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("input validation") {
  WeightedBesselSum f;
  f.w0 = 1.0;
  CHECK_THROWS_AS(certified_min(f, -1.0, 0.1), UsageError);
  CHECK_THROWS_AS(certified_min(f, 1.0, 0.0), UsageError);
  CHECK_THROWS_AS(certified_min(f, 1.0, 2.0), UsageError);
  f.terms.push_back({1.0, 0.0});
  CHECK_THROWS_AS(certified_min(f, 10.0, 0.1), UsageError);
}

TEST_CASE("dual weight profile of the 23-point configuration") {
  auto f = x23_dual_sum();
  CHECK(std::fabs(f.oscillation_budget() - 1.9306235753998644) <= 1e-12);
  CHECK(std::fabs(f.lipschitz_bound() - 2.6407078867409814) <= 1e-10);
  double dmin = HUGE_VAL;
  for (const auto& t : f.terms) dmin = std::min(dmin, t.scale);
  CHECK(std::fabs(dmin - 0.21493672346) <= 1e-6);
}

TEST_CASE("grid minimum and refinement near the main dip") {
  auto f = x23_dual_sum();
  auto rep = certified_min(f, 30.0, 1e-4);
  CHECK(std::fabs(rep.observed_min - 0.9999500309617252) <= 1e-6);
  CHECK(std::fabs(rep.observed_argmin - 3.7748846499885462) <= 1e-3);
  CHECK(rep.certified_lower <= rep.observed_min);
  CHECK(rep.certified_lower >= 0.9999500309617252 - 2e-7);
  CHECK(1.0 - rep.certified_lower <= 5.05e-5);
}

TEST_CASE("tail bound past the sampling window") {
  auto f = x23_dual_sum();
  auto rep = certified_min(f, 1e4, 1.0);
  CHECK(std::fabs(rep.tail_lower - 1.0089162519167556) <= 1e-9);
  CHECK(rep.tail_lower > 1.0 - 1e-8);
}
