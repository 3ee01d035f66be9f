#include "moserlp/fcn.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "moserlp/congruence.hpp"
#include "moserlp/errors.hpp"
#include "moserlp/lp_exact.hpp"
#include "moserlp/lp_model.hpp"

namespace moser {

namespace {

std::string set_name(uint32_t mask) {
  std::string s = "g{";
  bool first = true;
  for (int v = 0; mask >> v; ++v)
    if (mask & (1u << v)) {
      if (!first) s += ',';
      s += std::to_string(v + 1);
      first = false;
    }
  return s + '}';
}

// covering model over nonempty independent sets, one column per set
LpModelQ cover_model(const UnitDistanceGraph& g, const std::vector<uint32_t>& sets,
                     CoverForm form) {
  LpModelQ m;
  m.maximize = false;
  for (uint32_t s : sets) m.add_var(set_name(s), VarRole::atom, Rational(1));
  for (int v = 0; v < g.n; ++v) {
    std::vector<std::pair<int, Rational>> terms;
    for (size_t j = 0; j < sets.size(); ++j)
      if (sets[j] & (1u << v)) terms.emplace_back(static_cast<int>(j), Rational(1));
    m.add_row("cover_" + std::to_string(v + 1), RowRole::fcn_cover,
              form == CoverForm::inequality ? Sense::ge : Sense::eq, Rational(1),
              std::move(terms));
  }
  return m;
}

std::vector<uint32_t> nonempty_sets(const UnitDistanceGraph& g) {
  std::vector<uint32_t> sets = independent_sets(g);
  std::erase(sets, 0u);
  return sets;
}

Rational optimum(const LpModelQ& m) {
  ExactSolution s = solve_exact(m);
  if (s.status != LpStatus::optimal)
    throw SolverError(std::string("covering LP ") + to_string(s.status));
  return s.objective;
}

}  // namespace

Rational fractional_chromatic(const UnitDistanceGraph& g, CoverForm form) {
  return optimum(cover_model(g, nonempty_sets(g), form));
}

Rational geometric_fractional_chromatic(const PointSet& x, int k_max) {
  if (x.mode() != PointSet::Mode::exact)
    throw UsageError("geometric covering needs exact coordinates");
  if (k_max < 1) throw UsageError("k_max must be positive");
  UnitDistanceGraph g = build_udg(x);
  std::vector<uint32_t> sets = nonempty_sets(g);
  LpModelQ m = cover_model(g, sets, CoverForm::equality);

  auto pairs = congruence_pairs(x, 1, k_max, true, g);
  for (size_t p = 0; p < pairs.size(); ++p) {
    uint32_t ma = indices_to_mask(pairs[p].a), mb = indices_to_mask(pairs[p].b);
    std::vector<std::pair<int, Rational>> terms;
    for (size_t j = 0; j < sets.size(); ++j) {
      int c = ((sets[j] & ma) == ma) - ((sets[j] & mb) == mb);
      if (c != 0) terms.emplace_back(static_cast<int>(j), Rational(c));
    }
    if (!terms.empty())
      m.add_row("congruent_" + std::to_string(p + 1), RowRole::gfcn_congruence, Sense::eq,
                Rational(0), std::move(terms));
  }
  return optimum(m);
}

}  // namespace moser
