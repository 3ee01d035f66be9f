#pragma once

namespace testsupport {

// Reference values computed in 200-bit arithmetic, independent of the
// production evaluation path.
double oracle_j0(double x);
double oracle_j1(double x);

}  // namespace testsupport
