#pragma once

#include "moserlp/point.hpp"
#include "moserlp/rational.hpp"
#include "moserlp/udgraph.hpp"

namespace moser {

enum class CoverForm { inequality, equality };

// Optimum of the covering LP over nonempty independent sets: minimize the
// total weight subject to each vertex receiving cover at least (or exactly)
// one. Solved in exact rational arithmetic.
Rational fractional_chromatic(const UnitDistanceGraph& g, CoverForm form);

// Equality-form covering LP plus, for every congruent pair of independent
// subsets of size up to k_max, the constraint that both carry the same total
// weight over independent supersets. Requires an exact-mode point set.
Rational geometric_fractional_chromatic(const PointSet& x, int k_max);

}  // namespace moser
