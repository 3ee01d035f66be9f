#pragma once

#include <complex>
#include <vector>

#include "moserlp/field.hpp"

namespace moser {

// Planar point with exact coordinates, treated as the complex number re + i*im.
struct ExactPoint {
  FieldElement re, im;

  bool operator==(const ExactPoint& o) const = default;
  ExactPoint operator+(const ExactPoint& o) const { return {re + o.re, im + o.im}; }
  ExactPoint operator-(const ExactPoint& o) const { return {re - o.re, im - o.im}; }
  ExactPoint operator-() const { return {-re, -im}; }
  // complex multiplication
  ExactPoint operator*(const ExactPoint& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  ExactPoint conj() const { return {re, -im}; }
  FieldElement norm_sq() const { return re * re + im * im; }
  // complex inverse; throws ValidationError at the origin
  ExactPoint inverse() const {
    FieldElement n = norm_sq().inverse();
    return {re * n, -(im * n)};
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

struct FloatPoint {
  double x = 0, y = 0;
  std::complex<double> c() const { return {x, y}; }
};

FieldElement dist_sq(const ExactPoint& p, const ExactPoint& q);
double dist_sq(const FloatPoint& p, const FloatPoint& q);

// Total order on exact points for canonical sorting (basis-lexicographic).
int point_lex_cmp(const ExactPoint& a, const ExactPoint& b);

// An ordered list of points, all exact or all floating. Validates on
// construction: exact points pairwise distinct; floating points finite with
// pairwise distance >= 1e-6.
class PointSet {
 public:
  enum class Mode { exact, floating };

  static PointSet exact(std::vector<ExactPoint> pts);
  static PointSet floating(std::vector<FloatPoint> pts);

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::exact; }
  int size() const;

  const ExactPoint& epoint(int i) const { return epts_[i]; }
  const FloatPoint& fpoint(int i) const { return fpts_[i]; }
  const std::vector<ExactPoint>& epoints() const { return epts_; }
  const std::vector<FloatPoint>& fpoints() const { return fpts_; }

  // Squared distance between points i and j in whichever mode applies,
  // evaluated to double in exact mode via high-precision enclosure.
  double dist_sq_d(int i, int j) const;
  FieldElement dist_sq_exact(int i, int j) const;  // usage error in float mode

  PointSet to_float() const;

 private:
  PointSet() = default;
  Mode mode_ = Mode::exact;
  std::vector<ExactPoint> epts_;
  std::vector<FloatPoint> fpts_;
};

// Number of distinct values among all pairwise squared distances (exact mode).
int distinct_distances(const PointSet& X);

}  // namespace moser
