#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "moserlp/point.hpp"

namespace moser {

// Unit-distance graph of a point set: vertices are point indices, edges join
// points at distance exactly 1 (exact mode) or within 1e-9 of 1 (float mode).
struct UnitDistanceGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, lexicographic
  std::vector<uint32_t> adj;               // adjacency bitmasks

  bool is_edge(int i, int j) const { return (adj[i] >> j) & 1u; }
  bool independent(uint32_t mask) const {
    for (uint32_t m = mask; m; m &= m - 1) {
      int i = std::countr_zero(m);
      if (adj[i] & mask) return false;
    }
    return true;
  }
};

UnitDistanceGraph build_udg(const PointSet& X);

// All independent vertex subsets as bitmasks, in increasing numeric order
// (includes the empty set). Throws CapacityError for n > 30.
std::vector<uint32_t> independent_sets(const UnitDistanceGraph& G);

// Independence number: size of the largest independent set.
int independence_number(const UnitDistanceGraph& G);

std::vector<int> mask_to_indices(uint32_t mask);
uint32_t indices_to_mask(const std::vector<int>& idx);

}  // namespace moser
