#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "moserlp/point.hpp"
#include "moserlp/udgraph.hpp"

namespace moser {

// Orientation-preserving or reversing plane isometry z -> u*z + v, with the
// input conjugated first when reflect is set. |u| = 1.
struct ExactIsometry {
  ExactPoint u, v;
  bool reflect = false;
  ExactPoint apply(const ExactPoint& p) const { return u * (reflect ? p.conj() : p) + v; }
};

struct FloatIsometry {
  std::complex<double> u{1, 0}, v{0, 0};
  bool reflect = false;
  std::complex<double> apply(std::complex<double> p) const {
    return u * (reflect ? std::conj(p) : p) + v;
  }
};

struct Isometry {
  std::optional<ExactIsometry> exact;
  std::optional<FloatIsometry> floating;
};

// Witness isometry mapping X restricted to I onto X restricted to J as sets,
// if one exists. Reflections are considered. I and J are 0-based index sets
// of equal size.
std::optional<Isometry> congruent(const PointSet& X, const std::vector<int>& I,
                                  const std::vector<int>& J);

// An unordered congruence constraint between two index subsets.
struct CongruencePair {
  std::vector<int> a, b;  // sorted index lists, |a| = |b|
};

// Groups subsets of sizes k_min..k_max into congruence classes and links the
// members of each class in a chain: a class with m members yields m-1 pairs.
// With independent_only set, only independent sets of G are considered.
std::vector<CongruencePair> congruence_pairs(const PointSet& X, int k_min, int k_max,
                                             bool independent_only,
                                             const UnitDistanceGraph& G);

}  // namespace moser
