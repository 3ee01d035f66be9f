#pragma once

#include <array>
#include <optional>
#include <string>

#include "moserlp/highprec.hpp"
#include "moserlp/rational.hpp"

namespace moser {

// Element of the degree-4 number field generated by sqrt(3) and sqrt(11),
// stored as exact rational coordinates over the basis {1, sqrt3, sqrt11, sqrt33}.
class FieldElement {
 public:
  FieldElement() : c_{Rational(0), Rational(0), Rational(0), Rational(0)} {}
  explicit FieldElement(const Rational& r) : FieldElement() { c_[0] = r; }
  FieldElement(Rational a, Rational b, Rational c, Rational d)
      : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  static FieldElement sqrt3() { return {Rational(0), Rational(1), Rational(0), Rational(0)}; }
  static FieldElement sqrt11() { return {Rational(0), Rational(0), Rational(1), Rational(0)}; }
  static FieldElement sqrt33() { return {Rational(0), Rational(0), Rational(0), Rational(1)}; }

  const Rational& coord(int i) const { return c_[i]; }
  Rational& coord(int i) { return c_[i]; }

  bool is_zero() const;
  bool is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  bool operator==(const FieldElement& o) const = default;

  // Throws ValidationError on division by zero.
  FieldElement inverse() const;
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

  double to_double() const;
  // Enclosure of width below the requested bound (widens precision as needed).
  Enclosure to_enclosure(double max_width = 1e-30) const;
  int sign() const;  // exact sign via enclosure refinement

  std::string to_string() const;  // four rational tokens, space separated

 private:
  std::array<Rational, 4> c_;
};

// Exact square root within the field, nullopt when none exists.
std::optional<FieldElement> field_sqrt(const FieldElement& x);

// Total order on coordinates (basis-lexicographic, not numeric). Stable key
// for canonical sorting and grouping of exact values.
int lex_cmp(const FieldElement& a, const FieldElement& b);

std::optional<FieldElement> parse_field_element(const std::array<std::string, 4>& tokens);

}  // namespace moser
