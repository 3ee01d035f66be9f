#pragma once

namespace moser {

// Bessel functions of the first kind on [0, 1e7], absolute error below
// 1e-12. Arguments outside the supported range throw UsageError.
double bessel_j0(double x);
double bessel_j1(double x);

// Largest positive zero of J1 strictly below `limit`. Requires `limit`
// above the first zero (about 3.8317) and within the supported range.
double largest_j1_zero_below(double limit);

}  // namespace moser
