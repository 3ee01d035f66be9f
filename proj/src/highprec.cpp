#include "moserlp/highprec.hpp"

#include <cstdio>
#include <cstdlib>
#include <vector>

namespace moser {

std::string Big::str(int digits) const {
  char* out = nullptr;
  // %.*Rg keeps the output trim while honouring the requested digit count.
  if (mpfr_asprintf(&out, "%.*Rg", digits, v_) < 0) return "nan";
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

double Enclosure::width() const {
  Big w(lo.prec());
  w.sub(hi, lo, MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

double Enclosure::mid() const {
  Big m(lo.prec());
  m.add(lo, hi, MPFR_RNDN);
  mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
  return m.to_double();
}

Enclosure enclose_sqrt_ui(unsigned long n, mpfr_prec_t prec) {
  Enclosure e(prec);
  mpfr_sqrt_ui(e.lo.raw(), n, MPFR_RNDD);
  mpfr_sqrt_ui(e.hi.raw(), n, MPFR_RNDU);
  return e;
}

Enclosure enclose_sqrt(const Enclosure& x) {
  Enclosure e(x.lo.prec());
  e.lo.sqrt(x.lo, MPFR_RNDD);
  e.hi.sqrt(x.hi, MPFR_RNDU);
  if (e.lo.is_nan()) e.lo.set(0.0);  // tiny negative lo from rounding noise
  return e;
}

double sqrt_to_double(const Rational& r) {
  Big x = Big::of(r, 256, MPFR_RNDN);
  Big s(256);
  s.sqrt(x, MPFR_RNDN);
  return s.to_double();
}

}  // namespace moser
