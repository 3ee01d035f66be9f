#include "support/bessel_oracle.hpp"

#include <mpfr.h>

namespace testsupport {

namespace {

double eval(double x, int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
  mpfr_t t;
  mpfr_init2(t, 200);
  mpfr_set_d(t, x, MPFR_RNDN);
  f(t, t, MPFR_RNDN);
  double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

}  // namespace

double oracle_j0(double x) { return eval(x, mpfr_j0); }
double oracle_j1(double x) { return eval(x, mpfr_j1); }

}  // namespace testsupport
