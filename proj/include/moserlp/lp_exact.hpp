#pragma once

#include "moserlp/lp_model.hpp"

namespace moser {

struct ExactSolution {
  LpStatus status = LpStatus::iteration_limit;
  Rational objective;
  std::vector<Rational> primal;  // per model variable
  std::vector<int> basis;        // basic column per row; >= vars.size() means slack
};

// Dense two-phase simplex with Bland's rule, fully rational. Intended for
// small models; throws CapacityError above 5e4 nonzeros.
ExactSolution solve_exact(const LpModelQ& m);

}  // namespace moser
