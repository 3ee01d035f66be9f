#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "moserlp/congruence.hpp"
#include "moserlp/lp_model.hpp"
#include "moserlp/lp_solve.hpp"
#include "moserlp/point.hpp"
#include "moserlp/udgraph.hpp"

namespace moser {

// Evaluation nodes t_i = i*step for i = 0..floor(t_max/step).
struct FourierGrid {
  double step = 0.05;
  double t_max = 600.0;

  // Validates the parameters; throws UsageError on a nonpositive step and
  // CapacityError when the node count would exceed 2e7.
  std::vector<double> nodes() const;
};

// Correlation program for a planar point set: one column per grid node
// (radial profile weight) and one column per independent vertex subset,
// with rows tying the profile values at pair distances to the subset
// occupation probabilities.
struct MoserLpInstance {
  PointSet X = PointSet::exact({});
  UnitDistanceGraph G;
  std::vector<uint32_t> atoms;  // independent sets incl. empty, increasing
  FourierGrid grid;
  std::vector<double> nodes;
  LpModel model;

  int kappa_col0 = 0;  // column of the weight at nodes[i] is kappa_col0 + i
  int atom_col0 = 0;   // column of atoms[k] is atom_col0 + k
  int c0_row = -1;
  int iet_row = -1;
  std::vector<std::pair<int, int>> ie1_rows;  // (vertex, row)
  struct PairRow {
    int i = 0, j = 0;
    double dist = 0;
    int row = -1;
  };
  std::vector<PairRow> ie2_rows;
  std::vector<CongruencePair> iec_pairs;  // parallel to iec_rows
  std::vector<int> iec_rows;
  int iec_k_min = 0;  // requested policy, before any dedup adjustment
  int iec_k_max = 0;
  bool dedup = false;

  int kappa_column(int node) const { return kappa_col0 + node; }
  int atom_column(uint32_t mask) const;  // -1 when mask is not an atom
};

// Assembles the program for X on the given grid. Congruence rows cover
// independent subsets of sizes iec_k_min..iec_k_max; passing an empty range
// (e.g. iec_k_max = 0) disables them. With dedup set, the row set shrinks to
// the equivalent minimal variant: one vertex row, one pair row per distinct
// non-unit distance, and congruence rows extended to cover sizes 1..2.
// Floating point sets are accepted for search scoring; certificates require
// an exact instance.
MoserLpInstance build(const PointSet& X, const FourierGrid& grid, int iec_k_min,
                      int iec_k_max, bool dedup = false);

// Objective of the solved program: an upper bound on the density of a
// unit-distance-avoiding planar set. Throws SolverError unless the solve
// reaches optimality.
double upper_bound(const PointSet& X, const FourierGrid& grid, int iec_k_min,
                   int iec_k_max, bool dedup = false, const SolveOptions& opts = {});

// Per-node profile weights from a solved instance.
std::vector<double> kappa_values(const MoserLpInstance& inst, const LpSolution& s);

// Radial autocorrelation profile r -> sum_i kappa[i] * J0(t_i * r).
std::vector<std::pair<double, double>> autocorrelation_profile(
    const FourierGrid& grid, const std::vector<double>& kappa,
    const std::vector<double>& radii);

// Density of the hexagonal-lattice disc packing reference construction:
// open radius-1/2 disc clipped by a regular hexagon of height x, per
// fundamental cell. Domain 0 < x < 1.
double croft_density(double x);

// Row/column counts per role, formatted as an aligned table.
std::string instance_summary(const MoserLpInstance& inst);

}  // namespace moser
