#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "moserlp/field.hpp"

namespace moser {

// Element of an iterated quadratic extension of the base field. Level 0 wraps
// a FieldElement; level k > 0 stores lo + hi * g_k over two level k-1 parts.
// Elements are immutable; parts are shared to keep copies cheap.
class TowerElement {
 public:
  TowerElement() : level_(0) {}
  explicit TowerElement(FieldElement v) : level_(0), base_(std::move(v)) {}
  TowerElement(int level, TowerElement lo, TowerElement hi);

  int level() const { return level_; }
  const FieldElement& base() const { return base_; }
  const TowerElement& lo() const { return *lo_; }
  const TowerElement& hi() const { return *hi_; }
  bool is_zero() const;

 private:
  int level_;
  FieldElement base_;
  std::shared_ptr<const TowerElement> lo_, hi_;
};

class Tower;
struct AdjoinResult;
AdjoinResult adjoin_sqrt(const Tower& t, const TowerElement& radicand);

// The extension context: radicand i defines generator g_{i+1} with
// g_{i+1}^2 = radicand(i). Radicands are positive and are never squares in
// the tower below them, so every nonzero element is invertible.
class Tower {
 public:
  int levels() const { return static_cast<int>(rad_.size()); }
  const TowerElement& radicand(int i) const { return rad_[i]; }

  TowerElement zero(int level = 0) const;
  TowerElement from_field(const FieldElement& v) const { return TowerElement(v); }
  TowerElement lift(const TowerElement& x, int to_level) const;

  TowerElement add(const TowerElement& a, const TowerElement& b) const;
  TowerElement sub(const TowerElement& a, const TowerElement& b) const;
  TowerElement mul(const TowerElement& a, const TowerElement& b) const;
  TowerElement neg(const TowerElement& a) const;
  TowerElement inverse(const TowerElement& a) const;  // throws ValidationError on zero
  TowerElement div(const TowerElement& a, const TowerElement& b) const;
  bool equal(const TowerElement& a, const TowerElement& b) const;

  // Exact square root within the tower, nullopt when none exists there.
  std::optional<TowerElement> sqrt(const TowerElement& x) const;

  double to_double(const TowerElement& x) const;
  Enclosure to_enclosure(const TowerElement& x, double max_width = 1e-30) const;
  int sign(const TowerElement& x) const;

 private:
  friend AdjoinResult adjoin_sqrt(const Tower& t, const TowerElement& radicand);
  std::optional<TowerElement> sqrt_impl(const TowerElement& x) const;
  std::vector<TowerElement> rad_;
};

// Result of adjoin_sqrt: a tower containing sqrt(radicand). The input tower
// is reused when the root is already expressible, otherwise one level is
// appended. Radicand must be >= 0.
struct AdjoinResult {
  Tower tower;
  TowerElement root;   // sqrt of the radicand, expressed in `tower`
  bool extended;       // false when the root already existed
};

}  // namespace moser
