#pragma once

#include <mpfr.h>

#include <string>

#include "moserlp/rational.hpp"

namespace moser {

// Arbitrary-precision float with value semantics and explicit rounding per
// operation. Thin wrapper over mpfr_t; precision is fixed at construction.
class Big {
 public:
  explicit Big(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Big(const Big& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Big(Big&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Big& operator=(const Big& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Big& operator=(Big&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Big() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  static Big of(double x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Big b(prec); mpfr_set_d(b.v_, x, rnd); return b;
  }
  static Big of(const Rational& r, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Big b(prec); mpfr_set_q(b.v_, r.get_mpq_t(), rnd); return b;
  }
  static Big of_ui(unsigned long n, mpfr_prec_t prec) {
    Big b(prec); mpfr_set_ui(b.v_, n, MPFR_RNDN); return b;
  }

  void set(double x, mpfr_rnd_t rnd = MPFR_RNDN) { mpfr_set_d(v_, x, rnd); }
  void set(const Rational& r, mpfr_rnd_t rnd) { mpfr_set_q(v_, r.get_mpq_t(), rnd); }
  void set(const Big& o, mpfr_rnd_t rnd) { mpfr_set(v_, o.v_, rnd); }

  void add(const Big& a, const Big& b, mpfr_rnd_t rnd) { mpfr_add(v_, a.v_, b.v_, rnd); }
  void sub(const Big& a, const Big& b, mpfr_rnd_t rnd) { mpfr_sub(v_, a.v_, b.v_, rnd); }
  void mul(const Big& a, const Big& b, mpfr_rnd_t rnd) { mpfr_mul(v_, a.v_, b.v_, rnd); }
  void div(const Big& a, const Big& b, mpfr_rnd_t rnd) { mpfr_div(v_, a.v_, b.v_, rnd); }
  void sqrt(const Big& a, mpfr_rnd_t rnd) { mpfr_sqrt(v_, a.v_, rnd); }
  void neg(const Big& a, mpfr_rnd_t rnd) { mpfr_neg(v_, a.v_, rnd); }
  void abs(const Big& a) { mpfr_abs(v_, a.v_, MPFR_RNDN); }
  void add_d(const Big& a, double x, mpfr_rnd_t rnd) { mpfr_add_d(v_, a.v_, x, rnd); }
  void mul_d(const Big& a, double x, mpfr_rnd_t rnd) { mpfr_mul_d(v_, a.v_, x, rnd); }
  void mul_q(const Big& a, const Rational& q, mpfr_rnd_t rnd) { mpfr_mul_q(v_, a.v_, q.get_mpq_t(), rnd); }

  int sgn() const { return mpfr_sgn(v_); }
  int cmp(const Big& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp_d(double x) const { return mpfr_cmp_d(v_, x); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  std::string str(int digits) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

// Two-sided enclosure lo <= x <= hi of a real number.
struct Enclosure {
  Big lo, hi;
  explicit Enclosure(mpfr_prec_t prec = 128) : lo(prec), hi(prec) {}
  double width() const;
  double mid() const;
  bool contains_zero() const { return lo.sgn() <= 0 && hi.sgn() >= 0; }
};

// Enclosure of sqrt(n) for a nonnegative integer n.
Enclosure enclose_sqrt_ui(unsigned long n, mpfr_prec_t prec);

// Enclosure of sqrt(x) given an enclosure of x >= 0.
Enclosure enclose_sqrt(const Enclosure& x);

// Correctly rounded double sqrt of a nonnegative rational.
double sqrt_to_double(const Rational& r);

}  // namespace moser
