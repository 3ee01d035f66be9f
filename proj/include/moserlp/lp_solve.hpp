#pragma once

#include "moserlp/lp_model.hpp"

namespace moser {

struct SolveOptions {
  int max_iterations = 200;
  double tol = 1e-9;  // relative residual and gap target
};

// Deterministic primal-dual interior-point solve with dual extraction.
// Infeasible/unbounded are reported via status; only malformed models throw.
LpSolution solve(const LpModel& m, const SolveOptions& opts = {});

}  // namespace moser
