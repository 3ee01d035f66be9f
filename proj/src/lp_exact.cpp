#include "moserlp/lp_exact.hpp"

#include <vector>

#include "moserlp/errors.hpp"

namespace moser {

namespace {

// Dense rational tableau. Columns: structural | slack/surplus | artificial,
// then the right-hand side. Row `m` holds the active objective (phase 1 or 2).
struct Tableau {
  int m, n;  // constraint rows, total columns excluding rhs
  std::vector<std::vector<Rational>> t;
  std::vector<int> basis;

  Rational& at(int i, int j) { return t[i][j]; }
  Rational& rhs(int i) { return t[i][n]; }

  void pivot(int pr, int pc) {
    Rational inv = Rational(1) / t[pr][pc];
    for (int j = 0; j <= n; ++j) t[pr][j] *= inv;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      if (i == pr) continue;
      Rational f = t[i][pc];
      if (sgn(f) == 0) continue;
      for (int j = 0; j <= n; ++j) t[i][j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  }

  // Bland's rule on the objective stored in row `orow` (minimization:
  // entering column has negative reduced cost). Returns false when optimal,
  // throws nothing; unbounded reported via flag.
  enum class Step { optimal, moved, unbounded };
  Step step(int orow) {
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      if (sgn(t[orow][j]) < 0) { enter = j; break; }
    }
    if (enter < 0) return Step::optimal;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rational ratio = rhs(i) / t[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return Step::unbounded;
    pivot(leave, enter);
    return Step::moved;
  }
};

}  // namespace

ExactSolution solve_exact(const LpModelQ& m) {
  m.validate();
  if (m.nonzeros() > 50000) throw CapacityError("exact solver limited to 5e4 nonzeros");

  int rows = static_cast<int>(m.rows.size());
  int nvars = static_cast<int>(m.vars.size());

  // Count slack/surplus columns.
  int nslack = 0;
  for (const auto& r : m.rows)
    if (r.sense != Sense::eq) ++nslack;

  int nart = rows;  // one artificial per row keeps the logic simple
  int ncols = nvars + nslack + nart;

  Tableau T;
  T.m = rows;
  T.n = ncols;
  // rows constraints + phase-2 objective + phase-1 objective
  T.t.assign(rows + 2, std::vector<Rational>(ncols + 1, Rational(0)));
  T.basis.assign(rows, -1);

  int phase2 = rows, phase1 = rows + 1;

  int si = 0;
  for (int i = 0; i < rows; ++i) {
    const auto& r = m.rows[i];
    for (const auto& [col, coef] : r.terms) T.at(i, col) = coef;
    T.rhs(i) = r.rhs;
    if (r.sense == Sense::le) T.at(i, nvars + si++) = Rational(1);
    else if (r.sense == Sense::ge) T.at(i, nvars + si++) = Rational(-1);
    // normalize to nonnegative rhs
    if (sgn(T.rhs(i)) < 0)
      for (int j = 0; j <= ncols; ++j) T.at(i, j) = -T.at(i, j);
    int art = nvars + nslack + i;
    T.at(i, art) = Rational(1);
    T.basis[i] = art;
  }

  // Phase-2 objective: minimize (negate for max models).
  for (int j = 0; j < nvars; ++j)
    T.t[phase2][j] = m.maximize ? -m.vars[j].obj : m.vars[j].obj;

  // Phase-1 objective: minimize sum of artificials; express in nonbasic terms.
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j <= ncols; ++j) T.t[phase1][j] -= T.at(i, j);
  for (int i = 0; i < rows; ++i) T.t[phase1][nvars + nslack + i] = Rational(0);

  ExactSolution out;

  // Phase 1. Row `phase1` is the acting objective; keep phase-2 row updated
  // by including it in pivots (Tableau::pivot already touches every row).
  {
    int guard = 0;
    const int max_pivots = 200000;
    std::swap(T.t[phase1], T.t[rows]);  // step() reads row `m`
    while (true) {
      auto s = T.step(rows);
      if (s == Tableau::Step::optimal) break;
      if (s == Tableau::Step::unbounded)
        throw SolverError("phase-1 subproblem unbounded (internal)");
      if (++guard > max_pivots) throw SolverError("phase-1 pivot limit exceeded");
    }
    std::swap(T.t[phase1], T.t[rows]);
    // phase-1 optimum is -value in the objective row rhs
    if (sgn(T.t[phase1][ncols]) != 0) {
      out.status = LpStatus::infeasible;
      return out;
    }
  }

  // Drive remaining artificials out of the basis, then freeze their columns.
  for (int i = 0; i < rows; ++i) {
    if (T.basis[i] < nvars + nslack) continue;
    int enter = -1;
    for (int j = 0; j < nvars + nslack; ++j) {
      if (sgn(T.at(i, j)) != 0) { enter = j; break; }
    }
    if (enter >= 0) T.pivot(i, enter);
    // else: the row is all zeros in structural columns (redundant row); the
    // artificial stays basic at value 0, harmless.
  }
  int nstruct = nvars + nslack;
  T.n = nstruct;  // hide artificial columns from further pivoting
  // rhs currently lives at index ncols; move it next to the kept columns.
  for (auto& row : T.t) row[nstruct] = row[ncols];

  // Phase 2.
  {
    int guard = 0;
    const int max_pivots = 500000;
    while (true) {
      auto s = T.step(phase2);
      if (s == Tableau::Step::optimal) break;
      if (s == Tableau::Step::unbounded) {
        out.status = LpStatus::unbounded;
        return out;
      }
      if (++guard > max_pivots) throw SolverError("phase-2 pivot limit exceeded");
    }
  }

  out.status = LpStatus::optimal;
  out.primal.assign(nvars, Rational(0));
  for (int i = 0; i < rows; ++i)
    if (T.basis[i] < nvars) out.primal[T.basis[i]] = T.rhs(i);
  // The objective row accumulates minus the phase-2 minimum in its rhs slot;
  // undo the max -> min sign flip when needed.
  Rational val = -T.t[phase2][nstruct];
  out.objective = m.maximize ? Rational(-val) : val;
  out.basis = T.basis;
  return out;
}

}  // namespace moser
