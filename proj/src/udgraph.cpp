#include "moserlp/udgraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "moserlp/errors.hpp"

namespace moser {

UnitDistanceGraph build_udg(const PointSet& X) {
  int n = X.size();
  if (n > 30) throw CapacityError("unit-distance graph limited to 30 points");
  UnitDistanceGraph G;
  G.n = n;
  G.adj.assign(n, 0);
  const FieldElement one(Rational(1));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool unit;
      if (X.is_exact()) {
        unit = dist_sq(X.epoint(i), X.epoint(j)) == one;
      } else {
        unit = std::fabs(dist_sq(X.fpoint(i), X.fpoint(j)) - 1.0) <= 1e-9;
      }
      if (unit) {
        G.edges.emplace_back(i, j);
        G.adj[i] |= 1u << j;
        G.adj[j] |= 1u << i;
      }
    }
  }
  return G;
}

std::vector<uint32_t> independent_sets(const UnitDistanceGraph& G) {
  if (G.n > 30) throw CapacityError("independent set enumeration limited to 30 vertices");
  std::vector<uint32_t> out;
  auto rec = [&](auto&& self, int v, uint32_t mask, uint32_t forbidden) -> void {
    if (v == G.n) {
      out.push_back(mask);
      return;
    }
    self(self, v + 1, mask, forbidden);
    if (!((forbidden >> v) & 1u)) self(self, v + 1, mask | (1u << v), forbidden | G.adj[v]);
  };
  rec(rec, 0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

int independence_number(const UnitDistanceGraph& G) {
  int best = 0;
  for (uint32_t s : independent_sets(G)) best = std::max(best, std::popcount(s));
  return best;
}

std::vector<int> mask_to_indices(uint32_t mask) {
  std::vector<int> out;
  for (uint32_t m = mask; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

uint32_t indices_to_mask(const std::vector<int>& idx) {
  uint32_t m = 0;
  for (int i : idx) m |= 1u << i;
  return m;
}

}  // namespace moser
