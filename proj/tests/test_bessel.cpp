#include <doctest.h>

#include <cmath>
#include <random>

#include "moserlp/bessel.hpp"
#include "moserlp/errors.hpp"
#include "support/bessel_oracle.hpp"

using namespace moser;
using testsupport::oracle_j0;
using testsupport::oracle_j1;

TEST_CASE("values at zero") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j1(0.0) == 0.0);
}

TEST_CASE("spot values across both evaluation regimes") {
  struct Row {
    double x, j0, j1;
  };
  // 20-digit references; the pair at 15.9/16.1 straddles the series cutoff.
  const Row rows[] = {
      {0.5, 0.93846980724081290423, 0.24226845767487388638},
      {1.0, 0.76519768655796655145, 0.44005058574493351596},
      {5.0, -0.17759677131433830435, -0.32757913759146522204},
      {12.0, 0.047689310796833536624, -0.22344710449062761237},
      {15.9, -0.16497049948567060953, 0.10802789006306502792},
      {16.1, -0.18302369246531048507, 0.071979418622449990505},
      {100.0, 0.019985850304223122424, -0.077145352014112158033},
      {1000.0, 0.024786686152420174561, 0.0047283119070895239176},
      {9999.5, -0.0044787274031284250473, 0.0066032722001328390992},
  };
  for (const auto& r : rows) {
    CAPTURE(r.x);
    CHECK(std::fabs(bessel_j0(r.x) - r.j0) <= 1e-12);
    CHECK(std::fabs(bessel_j1(r.x) - r.j1) <= 1e-12);
  }
}

TEST_CASE("sweep against the high-precision reference") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> lin(0.0, 1e4);
  double worst = 0;
  for (int i = 0; i < 20000; ++i) {
    double x = lin(rng);
    worst = std::max(worst, std::fabs(bessel_j0(x) - oracle_j0(x)));
    worst = std::max(worst, std::fabs(bessel_j1(x) - oracle_j1(x)));
  }
  // dense walk over the cutoff neighborhood
  for (double x = 15.5; x <= 16.5; x += 1e-3) {
    worst = std::max(worst, std::fabs(bessel_j0(x) - oracle_j0(x)));
    worst = std::max(worst, std::fabs(bessel_j1(x) - oracle_j1(x)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("large arguments up to the domain edge") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lin(1e4, 1e7);
  double worst = 0;
  for (int i = 0; i < 500; ++i) {
    double x = lin(rng);
    worst = std::max(worst, std::fabs(bessel_j0(x) - oracle_j0(x)));
    worst = std::max(worst, std::fabs(bessel_j1(x) - oracle_j1(x)));
  }
  worst = std::max(worst, std::fabs(bessel_j0(1e7) - oracle_j0(1e7)));
  CHECK(worst <= 1e-12);
}

TEST_CASE("domain is enforced") {
  CHECK_THROWS_AS(bessel_j0(-0.5), UsageError);
  CHECK_THROWS_AS(bessel_j1(1.0000001e7), UsageError);
  CHECK_THROWS_AS(bessel_j0(std::nan("")), UsageError);
}

TEST_CASE("largest J1 zero below a limit") {
  CHECK(std::fabs(largest_j1_zero_below(1000.0) - 999.811486934410125) <= 1e-4);
  CHECK(std::fabs(largest_j1_zero_below(10.0) - 7.01558666981561875) <= 1e-9);
  CHECK(std::fabs(largest_j1_zero_below(4.0) - 3.83170597020751232) <= 1e-9);

  // a limit sitting just above a zero must still pick that zero
  double z = largest_j1_zero_below(7.0155866699);
  CHECK(std::fabs(z - 7.01558666981561875) <= 1e-9);
  // and just below it must fall back to the previous one
  double prev = largest_j1_zero_below(7.0155866697);
  CHECK(std::fabs(prev - 3.83170597020751232) <= 1e-9);

  CHECK_THROWS_AS(largest_j1_zero_below(3.5), UsageError);
  CHECK_THROWS_AS(largest_j1_zero_below(2e7), UsageError);
}

TEST_CASE("returned zeros are sign changes of the implementation") {
  for (double limit : {5.0, 50.0, 500.0, 5000.0}) {
    double z = largest_j1_zero_below(limit);
    CHECK(z < limit);
    CHECK(std::fabs(oracle_j1(z)) <= 1e-11);
    CHECK(bessel_j1(z - 1e-6) * bessel_j1(z + 1e-6) < 0);
  }
}
