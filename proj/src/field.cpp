#include "moserlp/field.hpp"

#include <cmath>

#include "moserlp/errors.hpp"

namespace moser {

namespace {

// Subfield generated by sqrt(11): a + b*sqrt11.
struct Q11 {
  Rational a, b;
  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
  Q11 operator+(const Q11& o) const { return {a + o.a, b + o.b}; }
  Q11 operator-(const Q11& o) const { return {a - o.a, b - o.b}; }
  Q11 operator*(const Q11& o) const { return {a * o.a + 11 * b * o.b, a * o.b + b * o.a}; }
  Q11 scaled(const Rational& s) const { return {a * s, b * s}; }
  Q11 conj() const { return {a, -b}; }
  Rational norm() const { return a * a - 11 * b * b; }
  Q11 inverse() const {
    Rational n = norm();
    return conj().scaled(Rational(1) / n);
  }
  bool operator==(const Q11& o) const { return a == o.a && b == o.b; }
};

Q11 part_even(const FieldElement& x) { return {x.coord(0), x.coord(2)}; }
Q11 part_odd(const FieldElement& x) { return {x.coord(1), x.coord(3)}; }

FieldElement assemble(const Q11& even, const Q11& odd) {
  return {even.a, odd.a, even.b, odd.b};
}

std::optional<Q11> sqrt_q11(const Q11& x) {
  if (x.is_zero()) return Q11{Rational(0), Rational(0)};
  if (sgn(x.b) == 0) {
    if (auto s = rational_sqrt(x.a)) return Q11{*s, Rational(0)};
    if (auto s = rational_sqrt(x.a / 11)) return Q11{Rational(0), *s};
    return std::nullopt;
  }
  auto s = rational_sqrt(x.a * x.a - 11 * x.b * x.b);
  if (!s) return std::nullopt;
  for (int sign = 0; sign < 2; ++sign) {
    Rational t = sign == 0 ? Rational(x.a + *s) : Rational(x.a - *s);
    t /= 2;
    auto p = rational_sqrt(t);
    if (!p || sgn(*p) == 0) continue;
    Q11 y{*p, x.b / (2 * *p)};
    if (y * y == x) return y;
  }
  return std::nullopt;
}

}  // namespace

bool FieldElement::is_zero() const {
  return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2], c_[3] - o.c_[3]};
}

FieldElement FieldElement::operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  const auto& a = c_;
  const auto& b = o.c_;
  return {a[0] * b[0] + 3 * a[1] * b[1] + 11 * a[2] * b[2] + 33 * a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + 11 * (a[2] * b[3] + a[3] * b[2]),
          a[0] * b[2] + a[2] * b[0] + 3 * (a[1] * b[3] + a[3] * b[1]),
          a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1]};
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  for (int i = 0; i < 4; ++i) c_[i] -= o.c_[i];
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw ValidationError("field element division by zero");
  // Norm cascade: multiply by the sqrt3-conjugate, then kill sqrt11 one level
  // down, leaving a rational denominator.
  Q11 a = part_even(*this), b = part_odd(*this);
  Q11 n3 = a * a - (b * b).scaled(Rational(3));
  Rational n = n3.norm();
  Q11 m = n3.conj().scaled(Rational(1) / n);
  // inverse = (a - b*sqrt3) * m
  return assemble(a * m, (b * m).scaled(Rational(-1)));
}

double FieldElement::to_double() const {
  static const double s3 = std::sqrt(3.0);
  static const double s11 = std::sqrt(11.0);
  static const double s33 = std::sqrt(33.0);
  return moser::to_double(c_[0]) + moser::to_double(c_[1]) * s3 +
         moser::to_double(c_[2]) * s11 + moser::to_double(c_[3]) * s33;
}

Enclosure FieldElement::to_enclosure(double max_width) const {
  for (mpfr_prec_t prec = 128; prec <= 1 << 16; prec *= 2) {
    Enclosure acc(prec);
    mpfr_set_q(acc.lo.raw(), c_[0].get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(acc.hi.raw(), c_[0].get_mpq_t(), MPFR_RNDU);
    const unsigned long radicands[3] = {3, 11, 33};
    for (int i = 0; i < 3; ++i) {
      const Rational& q = c_[i + 1];
      if (sgn(q) == 0) continue;
      Enclosure s = enclose_sqrt_ui(radicands[i], prec);
      Big tlo(prec), thi(prec);
      if (sgn(q) > 0) {
        tlo.mul_q(s.lo, q, MPFR_RNDD);
        thi.mul_q(s.hi, q, MPFR_RNDU);
      } else {
        tlo.mul_q(s.hi, q, MPFR_RNDD);
        thi.mul_q(s.lo, q, MPFR_RNDU);
      }
      acc.lo.add(acc.lo, tlo, MPFR_RNDD);
      acc.hi.add(acc.hi, thi, MPFR_RNDU);
    }
    if (acc.width() <= max_width) return acc;
  }
  throw ValidationError("field enclosure did not converge");
}

int FieldElement::sign() const {
  if (is_zero()) return 0;
  for (double w = 1e-20; w >= 1e-300; w *= 1e-40) {
    Enclosure e = to_enclosure(w);
    if (!e.contains_zero()) return e.lo.sgn() > 0 ? 1 : -1;
  }
  throw ValidationError("field sign separation failed");
}

std::string FieldElement::to_string() const {
  return format_rational(c_[0]) + " " + format_rational(c_[1]) + " " +
         format_rational(c_[2]) + " " + format_rational(c_[3]);
}

std::optional<FieldElement> field_sqrt(const FieldElement& x) {
  Q11 a = part_even(x), b = part_odd(x);
  if (b.is_zero()) {
    // y = p or y = q*sqrt3 with p, q in the sqrt11 subfield.
    if (auto p = sqrt_q11(a)) {
      FieldElement y = assemble(*p, Q11{Rational(0), Rational(0)});
      if (y * y == x) return y.sign() >= 0 ? y : -y;
    }
    if (auto q = sqrt_q11(a.scaled(Rational(1, 3)))) {
      FieldElement y = assemble(Q11{Rational(0), Rational(0)}, *q);
      if (y * y == x) return y.sign() >= 0 ? y : -y;
    }
    return std::nullopt;
  }
  // y = p + q*sqrt3 with p*q != 0; then (p^2 - 3 q^2)^2 = a^2 - 3 b^2.
  auto s = sqrt_q11(a * a - (b * b).scaled(Rational(3)));
  if (!s) return std::nullopt;
  for (int sign = 0; sign < 2; ++sign) {
    Q11 t = (sign == 0 ? a + *s : a - *s).scaled(Rational(1, 2));
    auto p = sqrt_q11(t);
    if (!p || p->is_zero()) continue;
    Q11 q = b * p->inverse().scaled(Rational(1, 2));
    FieldElement y = assemble(*p, q);
    if (y * y == x) return y.sign() >= 0 ? y : -y;
  }
  return std::nullopt;
}

int lex_cmp(const FieldElement& a, const FieldElement& b) {
  for (int i = 0; i < 4; ++i) {
    int c = cmp(a.coord(i), b.coord(i));
    if (c != 0) return c;
  }
  return 0;
}

std::optional<FieldElement> parse_field_element(const std::array<std::string, 4>& tokens) {
  FieldElement out;
  for (int i = 0; i < 4; ++i) {
    auto r = parse_rational(tokens[i]);
    if (!r) return std::nullopt;
    out.coord(i) = *r;
  }
  return out;
}

}  // namespace moser
