#include "moserlp/moser_lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "moserlp/bessel.hpp"
#include "moserlp/errors.hpp"

namespace moser {

namespace {

std::string atom_name(uint32_t mask) {
  std::string s = "a{";
  bool first = true;
  for (int v = 0; mask >> v; ++v)
    if (mask & (1u << v)) {
      if (!first) s += ',';
      s += std::to_string(v + 1);
      first = false;
    }
  return s + '}';
}

}  // namespace

std::vector<double> FourierGrid::nodes() const {
  if (!(step > 0) || !std::isfinite(step)) throw UsageError("grid step must be positive");
  if (!(t_max >= 0) || !std::isfinite(t_max))
    throw UsageError("grid range must be nonnegative");
  double count = std::floor(t_max / step) + 1;
  if (count > 2e7) throw CapacityError("grid node count exceeds 2e7");
  std::vector<double> ts(static_cast<size_t>(count));
  for (size_t i = 0; i < ts.size(); ++i) ts[i] = static_cast<double>(i) * step;
  return ts;
}

int MoserLpInstance::atom_column(uint32_t mask) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), mask);
  if (it == atoms.end() || *it != mask) return -1;
  return atom_col0 + static_cast<int>(it - atoms.begin());
}

MoserLpInstance build(const PointSet& X, const FourierGrid& grid, int iec_k_min,
                      int iec_k_max, bool dedup) {
  MoserLpInstance inst;
  inst.X = X;
  inst.grid = grid;
  inst.nodes = grid.nodes();
  inst.G = build_udg(X);
  inst.atoms = independent_sets(inst.G);
  inst.iec_k_min = iec_k_min;
  inst.iec_k_max = iec_k_max;
  inst.dedup = dedup;

  const int n = X.size();
  const int nk = static_cast<int>(inst.nodes.size());
  const int na = static_cast<int>(inst.atoms.size());
  LpModel& m = inst.model;
  m.maximize = true;

  inst.kappa_col0 = 0;
  for (int i = 0; i < nk; ++i) m.add_var("k" + std::to_string(i), VarRole::fourier, 1.0);
  inst.atom_col0 = nk;
  for (uint32_t s : inst.atoms) m.add_var(atom_name(s), VarRole::atom, 0.0);

  {
    std::vector<std::pair<int, double>> terms(nk);
    for (int i = 0; i < nk; ++i)
      terms[i] = {inst.kappa_col0 + i, bessel_j0(inst.nodes[i])};
    inst.c0_row = m.add_row("C0", RowRole::c0, Sense::eq, 0.0, std::move(terms));
  }
  {
    std::vector<std::pair<int, double>> terms(na);
    for (int k = 0; k < na; ++k) terms[k] = {inst.atom_col0 + k, 1.0};
    inst.iet_row = m.add_row("IET", RowRole::iet, Sense::eq, 1.0, std::move(terms));
  }

  const int ie1_count = dedup ? std::min(1, n) : n;
  for (int j = 0; j < ie1_count; ++j) {
    std::vector<std::pair<int, double>> terms;
    terms.reserve(nk + na / 2);
    for (int i = 0; i < nk; ++i) terms.emplace_back(inst.kappa_col0 + i, 1.0);
    for (int k = 0; k < na; ++k)
      if (inst.atoms[k] & (1u << j)) terms.emplace_back(inst.atom_col0 + k, -1.0);
    int r = m.add_row("IE1_" + std::to_string(j + 1), RowRole::ie1, Sense::eq, 0.0,
                      std::move(terms));
    inst.ie1_rows.emplace_back(j, r);
  }

  std::vector<FieldElement> seen_exact;
  std::vector<double> seen_float;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (inst.G.is_edge(i, j)) continue;  // profile at 1 is pinned by C0
      if (dedup) {
        if (X.is_exact()) {
          FieldElement d2 = X.dist_sq_exact(i, j);
          if (std::find(seen_exact.begin(), seen_exact.end(), d2) != seen_exact.end())
            continue;
          seen_exact.push_back(d2);
        } else {
          double d2 = X.dist_sq_d(i, j);
          bool dup = std::any_of(seen_float.begin(), seen_float.end(),
                                 [&](double e) { return std::abs(e - d2) <= 1e-9; });
          if (dup) continue;
          seen_float.push_back(d2);
        }
      }
      double d = std::sqrt(X.dist_sq_d(i, j));
      uint32_t pair_mask = (1u << i) | (1u << j);
      std::vector<std::pair<int, double>> terms;
      terms.reserve(nk + na / 4);
      for (int t = 0; t < nk; ++t)
        terms.emplace_back(inst.kappa_col0 + t, bessel_j0(inst.nodes[t] * d));
      for (int k = 0; k < na; ++k)
        if ((inst.atoms[k] & pair_mask) == pair_mask)
          terms.emplace_back(inst.atom_col0 + k, -1.0);
      int r = m.add_row("IE2_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                        RowRole::ie2, Sense::eq, 0.0, std::move(terms));
      inst.ie2_rows.push_back(MoserLpInstance::PairRow{i, j, d, r});
    }

  int kmin = dedup ? 1 : std::max(iec_k_min, 1);
  int kmax = dedup ? std::max(iec_k_max, 2) : iec_k_max;
  kmax = std::min(kmax, n);
  if (kmin <= kmax && kmax >= 1) {
    auto pairs = congruence_pairs(X, kmin, kmax, true, inst.G);
    for (size_t p = 0; p < pairs.size(); ++p) {
      uint32_t ma = indices_to_mask(pairs[p].a), mb = indices_to_mask(pairs[p].b);
      std::vector<std::pair<int, double>> terms;
      for (int k = 0; k < na; ++k) {
        int c = ((inst.atoms[k] & ma) == ma) - ((inst.atoms[k] & mb) == mb);
        if (c != 0) terms.emplace_back(inst.atom_col0 + k, static_cast<double>(c));
      }
      if (terms.empty()) continue;
      int r = m.add_row("IEC_" + std::to_string(p + 1), RowRole::iec, Sense::eq, 0.0,
                        std::move(terms));
      inst.iec_pairs.push_back(pairs[p]);
      inst.iec_rows.push_back(r);
    }
  }
  return inst;
}

double upper_bound(const PointSet& X, const FourierGrid& grid, int iec_k_min,
                   int iec_k_max, bool dedup, const SolveOptions& opts) {
  MoserLpInstance inst = build(X, grid, iec_k_min, iec_k_max, dedup);
  LpSolution s = solve(inst.model, opts);
  if (s.status != LpStatus::optimal)
    throw SolverError(std::string("correlation LP ") + to_string(s.status));
  return s.objective;
}

std::vector<double> kappa_values(const MoserLpInstance& inst, const LpSolution& s) {
  if (s.primal.size() != inst.model.vars.size())
    throw UsageError("solution does not match instance");
  std::vector<double> k(inst.nodes.size());
  for (size_t i = 0; i < k.size(); ++i) k[i] = s.primal[inst.kappa_col0 + i];
  return k;
}

std::vector<std::pair<double, double>> autocorrelation_profile(
    const FourierGrid& grid, const std::vector<double>& kappa,
    const std::vector<double>& radii) {
  std::vector<double> ts = grid.nodes();
  if (kappa.size() != ts.size()) throw UsageError("kappa length does not match grid");
  std::vector<std::pair<double, double>> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (!(r >= 0) || !std::isfinite(r)) throw UsageError("radius must be nonnegative");
    double v = 0;
    for (size_t i = 0; i < ts.size(); ++i) v += kappa[i] * bessel_j0(ts[i] * r);
    out.emplace_back(r, v);
  }
  return out;
}

double croft_density(double x) {
  if (!(x > 0) || !(x < 1)) throw UsageError("hexagon height must lie in (0, 1)");
  const double r = 0.5, d = x / 2;
  double area = M_PI * r * r;
  if (d < r) area -= 6 * (r * r * std::acos(d / r) - d * std::sqrt(r * r - d * d));
  return area / (std::sqrt(3.0) / 2 * (1 + x) * (1 + x));
}

std::string instance_summary(const MoserLpInstance& inst) {
  long counts[5] = {0, 0, 0, 0, 0};
  for (const auto& row : inst.model.rows) switch (row.role) {
      case RowRole::c0: ++counts[0]; break;
      case RowRole::iet: ++counts[1]; break;
      case RowRole::ie1: ++counts[2]; break;
      case RowRole::ie2: ++counts[3]; break;
      case RowRole::iec: ++counts[4]; break;
      default: break;
    }
  std::ostringstream os;
  auto line = [&os](const char* k, long v) {
    os << std::left << std::setw(18) << k << std::right << std::setw(10) << v << "\n";
  };
  line("points", inst.X.size());
  line("edges", static_cast<long>(inst.G.edges.size()));
  line("profile columns", static_cast<long>(inst.nodes.size()));
  line("atom columns", static_cast<long>(inst.atoms.size()));
  line("C0 rows", counts[0]);
  line("IET rows", counts[1]);
  line("IE1 rows", counts[2]);
  line("IE2 rows", counts[3]);
  line("IEC rows", counts[4]);
  line("rows", static_cast<long>(inst.model.rows.size()));
  line("nonzeros", static_cast<long>(inst.model.nonzeros()));
  return os.str();
}

}  // namespace moser
