#include "moserlp/lp_solve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "moserlp/errors.hpp"

namespace moser {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Col {
  std::vector<int> rows;
  std::vector<double> vals;
};

// Internal minimization problem in standard form: min c.x, Ax = b, x >= 0.
struct Standard {
  int nrows = 0;
  int ncols = 0;
  std::vector<Col> cols;
  VectorXd b, c;
};

double inf_norm(const VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

VectorXd mat_vec(const Standard& S, const VectorXd& x) {
  VectorXd out = VectorXd::Zero(S.nrows);
  for (int j = 0; j < S.ncols; ++j) {
    double xj = x[j];
    if (xj == 0) continue;
    const Col& col = S.cols[j];
    for (size_t k = 0; k < col.rows.size(); ++k) out[col.rows[k]] += col.vals[k] * xj;
  }
  return out;
}

VectorXd mat_tvec(const Standard& S, const VectorXd& y) {
  VectorXd out(S.ncols);
  for (int j = 0; j < S.ncols; ++j) {
    const Col& col = S.cols[j];
    double s = 0;
    for (size_t k = 0; k < col.rows.size(); ++k) s += col.vals[k] * y[col.rows[k]];
    out[j] = s;
  }
  return out;
}

// Groups of columns sharing a row pattern; large groups take a dense matrix
// product when forming A D A^T, the rest accumulate entry by entry.
struct NormalBuilder {
  struct Dense {
    std::vector<int> rows;
    MatrixXd V;  // pattern rows x group columns
    std::vector<int> cols;
  };
  std::vector<Dense> dense;
  std::vector<int> sparse_cols;

  void init(const Standard& S) {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int j = 0; j < S.ncols; ++j) groups[S.cols[j].rows].push_back(j);
    for (auto& [pattern, cols] : groups) {
      if (pattern.size() >= 16 && cols.size() >= 16) {
        Dense d;
        d.rows = pattern;
        d.cols = cols;
        d.V.resize(pattern.size(), cols.size());
        for (size_t k = 0; k < cols.size(); ++k)
          for (size_t r = 0; r < pattern.size(); ++r) d.V(r, k) = S.cols[cols[k]].vals[r];
        dense.push_back(std::move(d));
      } else {
        for (int j : cols) sparse_cols.push_back(j);
      }
    }
    std::sort(sparse_cols.begin(), sparse_cols.end());
  }

  void form(const Standard& S, const VectorXd& d, MatrixXd& M) const {
    M.setZero();
    for (const auto& g : dense) {
      VectorXd dsub(g.cols.size());
      for (size_t k = 0; k < g.cols.size(); ++k) dsub[k] = d[g.cols[k]];
      MatrixXd block = g.V * dsub.asDiagonal() * g.V.transpose();
      for (size_t a = 0; a < g.rows.size(); ++a)
        for (size_t bb = 0; bb < g.rows.size(); ++bb) M(g.rows[a], g.rows[bb]) += block(a, bb);
    }
    for (int j : sparse_cols) {
      const Col& col = S.cols[j];
      double dj = d[j];
      for (size_t a = 0; a < col.rows.size(); ++a) {
        double va = col.vals[a] * dj;
        for (size_t bb = 0; bb < col.rows.size(); ++bb)
          M(col.rows[a], col.rows[bb]) += va * col.vals[bb];
      }
    }
  }
};

double max_step(const VectorXd& x, const VectorXd& dx) {
  double a = 1.0;
  for (int i = 0; i < x.size(); ++i)
    if (dx[i] < 0) a = std::min(a, -x[i] / dx[i]);
  return a;
}

struct IpmResult {
  LpStatus status = LpStatus::iteration_limit;
  VectorXd x, y, z;
  int iterations = 0;
};

IpmResult ipm(const Standard& S, const SolveOptions& opts) {
  int nr = S.nrows, nc = S.ncols;
  IpmResult R;

  NormalBuilder nb;
  nb.init(S);
  MatrixXd M(nr, nr);

  double bnorm = 1 + inf_norm(S.b), cnorm = 1 + inf_norm(S.c);

  auto factor = [&](const VectorXd& d) {
    nb.form(S, d, M);
    double diag_max = M.diagonal().maxCoeff();
    double delta = 1e-12 * std::max(1.0, diag_max);
    for (int tries = 0; tries < 8; ++tries) {
      MatrixXd Mreg = M;
      Mreg.diagonal().array() += delta;
      Eigen::LLT<MatrixXd> llt(Mreg);
      if (llt.info() == Eigen::Success) return llt;
      delta *= 100;
    }
    throw SolverError("normal equation factorization failed");
  };

  // Starting point: least-squares heuristics with positivity pushes.
  VectorXd ones = VectorXd::Ones(nc);
  auto llt0 = factor(ones);
  VectorXd y0 = llt0.solve(mat_vec(S, S.c));
  VectorXd z0 = S.c - mat_tvec(S, y0);
  VectorXd x0 = mat_tvec(S, llt0.solve(S.b));
  double dx = std::max(0.0, -1.5 * x0.minCoeff());
  double dz = std::max(0.0, -1.5 * z0.minCoeff());
  x0.array() += dx;
  z0.array() += dz;
  double xz = x0.dot(z0);
  double sx = x0.sum(), sz = z0.sum();
  x0.array() += sz > 0 ? 0.5 * xz / sz : 1.0;
  z0.array() += sx > 0 ? 0.5 * xz / sx : 1.0;
  if (!(x0.minCoeff() > 0)) x0.array() += 1.0;
  if (!(z0.minCoeff() > 0)) z0.array() += 1.0;

  VectorXd x = x0, y = y0, z = z0;

  // Complementarity can hit the machine floor a little before the residuals
  // reach the strict target; past that point the scaling matrix is pure
  // noise and iterates only oscillate. Remember the best iterate and settle
  // for it when that happens, within a 10x slack on the target.
  double best_score = std::numeric_limits<double>::infinity();
  VectorXd best_x = x, best_y = y, best_z = z;
  int stall = 0;
  bool lockstep = false;

  for (int it = 1; it <= opts.max_iterations; ++it) {
    R.iterations = it;
    VectorXd rp = S.b - mat_vec(S, x);
    VectorXd rd = S.c - mat_tvec(S, y) - z;
    double mu = x.dot(z) / nc;
    double pobj = S.c.dot(x), dobj = S.b.dot(y);
    double rel_p = inf_norm(rp) / bnorm;
    double rel_d = inf_norm(rd) / cnorm;
    double rel_g = std::fabs(pobj - dobj) / (1 + std::fabs(pobj));

    if (rel_p <= opts.tol && rel_d <= opts.tol && rel_g <= 10 * opts.tol) {
      R.status = LpStatus::optimal;
      R.x = x; R.y = y; R.z = z;
      return R;
    }

    double score = std::max({rel_p, rel_d, rel_g / 10});
    if (score < best_score) {
      best_score = score;
      best_x = x; best_y = y; best_z = z;
      stall = 0;
    } else if (score < 1e-3) {
      ++stall;  // near-converged and no longer improving
    }
    if (stall >= 25) break;

    // Divergence classification: a blowing primal iterate that still tracks
    // Ax = b (residual judged against the iterate scale, since |rp| carries
    // rounding noise of order xmax*eps) is an unbounded ray; a blowing dual
    // iterate means infeasible.
    double xmax = inf_norm(x), ymax = inf_norm(y);
    if (std::isnan(mu) || std::isnan(xmax) || std::isnan(ymax))
      throw SolverError("interior-point iterates diverged");
    if (xmax > 1e12 || ymax > 1e10 || mu > 1e24) {
      double sp = inf_norm(rp) / (bnorm + xmax);
      if (xmax > 1e10 && sp < 1e-8) R.status = LpStatus::unbounded;
      else R.status = LpStatus::infeasible;
      R.x = x; R.y = y; R.z = z;
      return R;
    }

    VectorXd d = x.array() / z.array();
    auto llt = factor(d);

    // affine scaling step
    VectorXd rhs_aff = S.b + mat_vec(S, d.cwiseProduct(rd));
    VectorXd dy_aff = llt.solve(rhs_aff);
    VectorXd dz_aff = rd - mat_tvec(S, dy_aff);
    VectorXd dx_aff = -x - d.cwiseProduct(dz_aff);

    double ap = max_step(x, dx_aff), ad = max_step(z, dz_aff);
    double mu_aff = (x + ap * dx_aff).dot(z + ad * dz_aff) / nc;
    double sigma = std::pow(mu_aff / mu, 3);
    sigma = std::clamp(sigma, 1e-8, 1.0);
    // Keep complementarity from racing ahead of feasibility: once the pair
    // products sit far below the residuals, hard centering lets Newton
    // finish cleaning the residuals before mu collapses into noise.
    if (mu < 0.1 * std::max(rel_p, rel_d) * (1 + std::fabs(pobj)))
      sigma = std::max(sigma, 0.5);

    // combined predictor-corrector step
    VectorXd v_over_z(nc);
    for (int i = 0; i < nc; ++i)
      v_over_z[i] = (sigma * mu - x[i] * z[i] - dx_aff[i] * dz_aff[i]) / z[i];
    VectorXd rhs = rp - mat_vec(S, v_over_z) + mat_vec(S, d.cwiseProduct(rd));
    VectorXd dy = llt.solve(rhs);
    VectorXd dz = rd - mat_tvec(S, dy);
    VectorXd dxv = v_over_z - d.cwiseProduct(dz);

    // Separate primal/dual steps make the early iterations fast and let
    // infeasible or unbounded iterates run away for the classifier above.
    // Near the optimum they are a liability: complementarity outruns primal
    // feasibility and mu collapses to the machine floor while rp is still
    // catching up, so switch to equal steps for the endgame.
    double tau = 0.9995;
    ap = std::min(1.0, tau * max_step(x, dxv));
    ad = std::min(1.0, tau * max_step(z, dz));
    if (lockstep || score < 1e-4) {
      lockstep = true;
      ap = ad = std::min(ap, ad);
    }
    x += ap * dxv;
    y += ad * dy;
    z += ad * dz;
  }
  if (best_score <= 10 * opts.tol) R.status = LpStatus::optimal;
  R.x = best_x; R.y = best_y; R.z = best_z;
  return R;
}

}  // namespace

LpSolution solve(const LpModel& m, const SolveOptions& opts) {
  m.validate();

  int n0 = static_cast<int>(m.vars.size());
  int r0 = static_cast<int>(m.rows.size());

  // --- presolve: fix implied-zero variables, drop null/duplicate rows ---
  std::vector<char> fixed(n0, 0);
  std::vector<char> dropped(r0, 0);
  bool infeasible_now = false;
  bool changed = true;
  while (changed && !infeasible_now) {
    changed = false;
    for (int i = 0; i < r0 && !infeasible_now; ++i) {
      if (dropped[i]) continue;
      const auto& row = m.rows[i];
      int live = 0, pos = 0, neg = 0;
      for (const auto& [col, coef] : row.terms) {
        if (fixed[col] || coef == 0) continue;
        ++live;
        (coef > 0 ? pos : neg)++;
      }
      if (live == 0) {
        bool ok = row.sense == Sense::eq   ? row.rhs == 0
                  : row.sense == Sense::le ? row.rhs >= 0
                                           : row.rhs <= 0;
        if (!ok) infeasible_now = true;
        dropped[i] = 1;
        changed = true;
        continue;
      }
      // all-one-sign zero row forces every live variable to zero
      bool forces = row.rhs == 0 && ((row.sense == Sense::eq && (neg == 0 || pos == 0)) ||
                                     (row.sense == Sense::le && neg == 0));
      if (forces) {
        for (const auto& [col, coef] : row.terms)
          if (!fixed[col] && coef != 0) fixed[col] = 1;
        dropped[i] = 1;
        changed = true;
      }
    }
  }

  LpSolution out;
  out.primal.assign(n0, 0.0);
  out.dual.assign(r0, 0.0);

  if (infeasible_now) {
    out.status = LpStatus::infeasible;
    return out;
  }

  // duplicate rows: keep the first of each identical (sense, rhs, terms) set
  {
    std::map<std::tuple<int, double, std::vector<std::pair<int, double>>>, int> seen;
    for (int i = 0; i < r0; ++i) {
      if (dropped[i]) continue;
      std::vector<std::pair<int, double>> key_terms;
      for (const auto& [col, coef] : m.rows[i].terms)
        if (!fixed[col] && coef != 0) key_terms.emplace_back(col, coef);
      std::sort(key_terms.begin(), key_terms.end());
      auto key = std::make_tuple(static_cast<int>(m.rows[i].sense), m.rows[i].rhs, key_terms);
      auto [it, fresh] = seen.emplace(key, i);
      if (!fresh) dropped[i] = 1;
    }
  }

  // --- build the standard form over surviving rows/columns ---
  std::vector<int> colmap(n0, -1);
  int nc = 0;
  for (int j = 0; j < n0; ++j)
    if (!fixed[j]) colmap[j] = nc++;
  std::vector<int> rowmap(r0, -1);
  std::vector<int> rows_kept;
  for (int i = 0; i < r0; ++i)
    if (!dropped[i]) {
      rowmap[i] = static_cast<int>(rows_kept.size());
      rows_kept.push_back(i);
    }
  int nr = static_cast<int>(rows_kept.size());

  int nslack = 0;
  for (int i : rows_kept)
    if (m.rows[i].sense != Sense::eq) ++nslack;

  Standard S;
  S.nrows = nr;
  S.ncols = nc + nslack;
  S.cols.resize(S.ncols);
  S.b.resize(nr);
  S.c = VectorXd::Zero(S.ncols);
  for (int j = 0; j < n0; ++j)
    if (colmap[j] >= 0) S.c[colmap[j]] = m.maximize ? -m.vars[j].obj : m.vars[j].obj;

  {
    std::vector<std::vector<std::pair<int, double>>> byrow(nr);
    int si = 0;
    for (int k = 0; k < nr; ++k) {
      const auto& row = m.rows[rows_kept[k]];
      S.b[k] = row.rhs;
      for (const auto& [col, coef] : row.terms)
        if (colmap[col] >= 0 && coef != 0) byrow[k].emplace_back(colmap[col], coef);
      if (row.sense != Sense::eq) {
        byrow[k].emplace_back(nc + si, row.sense == Sense::le ? 1.0 : -1.0);
        ++si;
      }
    }
    for (int k = 0; k < nr; ++k)
      for (auto [j, v] : byrow[k]) {
        S.cols[j].rows.push_back(k);
        S.cols[j].vals.push_back(v);
      }
  }

  // columns that appear in no surviving row
  std::vector<int> orphan;
  for (int j = 0; j < S.ncols; ++j)
    if (S.cols[j].rows.empty()) orphan.push_back(j);
  for (int j : orphan) {
    if (S.c[j] < 0) {  // decreasing the min objective without limit
      out.status = LpStatus::unbounded;
      return out;
    }
  }

  if (nr == 0) {
    out.status = LpStatus::optimal;
    out.objective = 0;
    return out;
  }

  // --- Ruiz equilibration ---
  VectorXd rscale = VectorXd::Ones(nr), cscale = VectorXd::Ones(S.ncols);
  for (int pass = 0; pass < 10; ++pass) {
    VectorXd rmax = VectorXd::Zero(nr), cmax = VectorXd::Zero(S.ncols);
    for (int j = 0; j < S.ncols; ++j) {
      const Col& col = S.cols[j];
      for (size_t k = 0; k < col.rows.size(); ++k) {
        double a = std::fabs(col.vals[k]);
        rmax[col.rows[k]] = std::max(rmax[col.rows[k]], a);
        cmax[j] = std::max(cmax[j], a);
      }
    }
    for (int i = 0; i < nr; ++i) rmax[i] = rmax[i] > 0 ? 1.0 / std::sqrt(rmax[i]) : 1.0;
    for (int j = 0; j < S.ncols; ++j) cmax[j] = cmax[j] > 0 ? 1.0 / std::sqrt(cmax[j]) : 1.0;
    for (int j = 0; j < S.ncols; ++j) {
      Col& col = S.cols[j];
      for (size_t k = 0; k < col.rows.size(); ++k) col.vals[k] *= rmax[col.rows[k]] * cmax[j];
    }
    rscale = rscale.cwiseProduct(rmax);
    cscale = cscale.cwiseProduct(cmax);
  }
  for (int i = 0; i < nr; ++i) S.b[i] *= rscale[i];
  for (int j = 0; j < S.ncols; ++j) S.c[j] *= cscale[j];

  IpmResult R = ipm(S, opts);
  out.status = R.status;
  out.iterations = R.iterations;
  if (R.status != LpStatus::optimal) return out;

  // --- unscale and map back ---
  VectorXd xs = R.x.cwiseProduct(cscale);
  VectorXd ys = R.y.cwiseProduct(rscale);
  for (int j = 0; j < n0; ++j)
    if (colmap[j] >= 0) out.primal[j] = xs[colmap[j]];
  for (int k = 0; k < nr; ++k) {
    double yk = ys[k];
    out.dual[rows_kept[k]] = m.maximize ? -yk : yk;
  }

  double pobj = 0;
  for (int j = 0; j < n0; ++j) pobj += m.vars[j].obj * out.primal[j];
  out.objective = pobj;

  double dobj = 0;
  for (int i = 0; i < r0; ++i) dobj += m.rows[i].rhs * out.dual[i];
  out.dual_gap = std::fabs(pobj - dobj);

  double maxviol = 0;
  for (int i = 0; i < r0; ++i) {
    double ax = 0;
    for (const auto& [col, coef] : m.rows[i].terms) ax += coef * out.primal[col];
    double v = m.rows[i].sense == Sense::eq   ? std::fabs(ax - m.rows[i].rhs)
               : m.rows[i].sense == Sense::le ? std::max(0.0, ax - m.rows[i].rhs)
                                              : std::max(0.0, m.rows[i].rhs - ax);
    maxviol = std::max(maxviol, v);
  }
  out.primal_residual = maxviol;
  return out;
}

}  // namespace moser
