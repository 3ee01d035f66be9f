#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "moserlp/point.hpp"
#include "moserlp/tower.hpp"

namespace moser {

// Construction order for a numeric point set: the first points carry exact
// coordinates verbatim, every later one records the two earlier points it
// was born at unit distance from.
struct BirthOrder {
  std::vector<ExactPoint> seed;
  std::vector<std::pair<int, int>> anchors;  // 0-based here, 1-based on disk

  int size() const { return static_cast<int>(seed.size() + anchors.size()); }
};

struct TowerPoint {
  TowerElement re, im;
};

// Exact reconstruction of a numeric point set: the extension tower the
// coordinates live in, one point per input, and the rule that resolved each
// point (0 for seed entries, 1 = parallelogram completion, 2 = triangle
// apex, 3 = circle intersection).
struct SymbolizeResult {
  Tower tower;
  std::vector<TowerPoint> points;
  std::vector<int> rules;
};

// Recovers exact coordinates for `numeric` following `order`. Seed points
// are taken verbatim (each must match its numeric coordinates within 1e-6).
// Every later point is resolved by the first applicable rule:
//   (1) parallelogram completion b + c - d over three resolved points,
//       candidates scanned in index order and matched within 1e-6;
//   (2) apex of a unit equilateral triangle on the two anchors;
//   (3) intersection of the unit circles around the anchors, solving the
//       quadratic exactly over the tower (extending it when the radicand has
//       no square root there) and picking the branch nearer the numeric
//       value.
// Whatever the rule, the result must sit at exact unit distance from both
// anchors. Throws UsageError when `numeric` is exact or its size disagrees
// with the order; ValidationError when no rule applies within tolerance
// (naming the point) or an exact check fails.
SymbolizeResult symbolize(const PointSet& numeric, const BirthOrder& order);

// Collapses a reconstruction whose coordinates all lie in the base field to
// an exact point set. Throws ValidationError when a coordinate genuinely
// needs one of the adjoined radicals.
PointSet base_field_points(const SymbolizeResult& r);

// Text form: a `seed N` header with one exact point per line (eight rational
// tokens), then `births M` with one 1-based anchor pair per line. '#' starts
// a comment. parse(print(o)) round-trips byte for byte.
void print_order(const BirthOrder& o, std::ostream& out);
BirthOrder parse_order(std::istream& in);
BirthOrder load_order(const std::string& path);
void save_order(const BirthOrder& o, const std::string& path);

}  // namespace moser
