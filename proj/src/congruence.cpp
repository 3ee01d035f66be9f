#include "moserlp/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "moserlp/errors.hpp"

namespace moser {

namespace {

constexpr double kTol = 1e-9;

std::vector<FieldElement> exact_key(const PointSet& X, const std::vector<int>& I) {
  std::vector<FieldElement> key;
  for (size_t a = 0; a < I.size(); ++a)
    for (size_t b = a + 1; b < I.size(); ++b)
      key.push_back(dist_sq(X.epoint(I[a]), X.epoint(I[b])));
  std::sort(key.begin(), key.end(),
            [](const FieldElement& x, const FieldElement& y) { return lex_cmp(x, y) < 0; });
  return key;
}

std::vector<double> float_key(const PointSet& X, const std::vector<int>& I) {
  std::vector<double> key;
  for (size_t a = 0; a < I.size(); ++a)
    for (size_t b = a + 1; b < I.size(); ++b) key.push_back(dist_sq(X.fpoint(I[a]), X.fpoint(I[b])));
  std::sort(key.begin(), key.end());
  return key;
}

bool float_keys_match(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > kTol) return false;
  return true;
}

std::optional<ExactIsometry> witness_exact(const PointSet& X, const std::vector<int>& I,
                                           const std::vector<int>& J) {
  if (I.size() == 1) {
    ExactPoint u{FieldElement(Rational(1)), FieldElement()};
    return ExactIsometry{u, X.epoint(J[0]) - X.epoint(I[0]), false};
  }
  if (exact_key(X, I) != exact_key(X, J)) return std::nullopt;
  const ExactPoint& p1 = X.epoint(I[0]);
  const ExactPoint& p2 = X.epoint(I[1]);
  FieldElement d12 = dist_sq(p1, p2);
  const FieldElement one(Rational(1));
  for (int reflect = 0; reflect < 2; ++reflect) {
    ExactPoint s1 = reflect ? p1.conj() : p1;
    ExactPoint s2 = reflect ? p2.conj() : p2;
    ExactPoint delta = s2 - s1;
    for (int qa : J) {
      for (int qb : J) {
        if (qa == qb) continue;
        if (!(dist_sq(X.epoint(qa), X.epoint(qb)) == d12)) continue;
        ExactPoint u = (X.epoint(qb) - X.epoint(qa)) * delta.inverse();
        if (!(u.norm_sq() == one)) continue;
        ExactPoint v = X.epoint(qa) - u * s1;
        ExactIsometry iso{u, v, reflect != 0};
        bool ok = true;
        std::vector<bool> used(J.size(), false);
        for (int i : I) {
          ExactPoint img = iso.apply(X.epoint(i));
          bool hit = false;
          for (size_t t = 0; t < J.size(); ++t) {
            if (!used[t] && img == X.epoint(J[t])) {
              used[t] = true;
              hit = true;
              break;
            }
          }
          if (!hit) { ok = false; break; }
        }
        if (ok) return iso;
      }
    }
  }
  return std::nullopt;
}

std::optional<FloatIsometry> witness_float(const PointSet& X, const std::vector<int>& I,
                                           const std::vector<int>& J) {
  using cd = std::complex<double>;
  if (I.size() == 1) {
    return FloatIsometry{{1, 0}, X.fpoint(J[0]).c() - X.fpoint(I[0]).c(), false};
  }
  if (!float_keys_match(float_key(X, I), float_key(X, J))) return std::nullopt;
  cd p1 = X.fpoint(I[0]).c(), p2 = X.fpoint(I[1]).c();
  double d12 = std::norm(p2 - p1);
  for (int reflect = 0; reflect < 2; ++reflect) {
    cd s1 = reflect ? std::conj(p1) : p1;
    cd s2 = reflect ? std::conj(p2) : p2;
    cd delta = s2 - s1;
    for (int qa : J) {
      for (int qb : J) {
        if (qa == qb) continue;
        cd q1 = X.fpoint(qa).c(), q2 = X.fpoint(qb).c();
        if (std::fabs(std::norm(q2 - q1) - d12) > kTol) continue;
        cd u = (q2 - q1) / delta;
        if (std::fabs(std::norm(u) - 1.0) > kTol) continue;
        cd v = q1 - u * s1;
        FloatIsometry iso{u, v, reflect != 0};
        bool ok = true;
        std::vector<bool> used(J.size(), false);
        for (int i : I) {
          cd img = iso.apply(X.fpoint(i).c());
          bool hit = false;
          for (size_t t = 0; t < J.size(); ++t) {
            if (!used[t] && std::abs(img - X.fpoint(J[t]).c()) <= kTol) {
              used[t] = true;
              hit = true;
              break;
            }
          }
          if (!hit) { ok = false; break; }
        }
        if (ok) return iso;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Isometry> congruent(const PointSet& X, const std::vector<int>& I,
                                  const std::vector<int>& J) {
  if (I.size() != J.size()) throw UsageError("congruent: index sets differ in size");
  if (I.empty()) throw UsageError("congruent: empty index sets");
  Isometry out;
  if (X.is_exact()) {
    auto w = witness_exact(X, I, J);
    if (!w) return std::nullopt;
    out.exact = *w;
  } else {
    auto w = witness_float(X, I, J);
    if (!w) return std::nullopt;
    out.floating = *w;
  }
  return out;
}

std::vector<CongruencePair> congruence_pairs(const PointSet& X, int k_min, int k_max,
                                             bool independent_only,
                                             const UnitDistanceGraph& G) {
  int n = X.size();
  if (k_min < 1 || k_min > k_max || k_max > n)
    throw UsageError("congruence_pairs: bad size range");

  std::vector<std::vector<int>> subsets;
  if (independent_only) {
    for (uint32_t mask : independent_sets(G)) {
      int pc = std::popcount(mask);
      if (pc >= k_min && pc <= k_max) subsets.push_back(mask_to_indices(mask));
    }
  } else {
    if (n > 30) throw CapacityError("subset enumeration limited to 30 points");
    std::vector<uint32_t> masks;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
      int pc = std::popcount(mask);
      if (pc >= k_min && pc <= k_max) masks.push_back(mask);
    }
    std::sort(masks.begin(), masks.end());
    for (uint32_t mask : masks) subsets.push_back(mask_to_indices(mask));
  }

  // Group by squared-distance multiset, then split groups into congruence
  // classes with explicit witness checks. Grouping keys keep detection cheap;
  // classes keep first-seen order, which is deterministic.
  std::vector<std::vector<std::vector<int>>> classes;

  if (X.is_exact()) {
    struct KeyLess {
      bool operator()(const std::vector<FieldElement>& a,
                      const std::vector<FieldElement>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i) {
          int c = lex_cmp(a[i], b[i]);
          if (c != 0) return c < 0;
        }
        return false;
      }
    };
    std::map<std::vector<FieldElement>, std::vector<size_t>, KeyLess> group_classes;
    for (const auto& S : subsets) {
      auto key = exact_key(X, S);
      auto& cand = group_classes[key];
      bool placed = false;
      for (size_t ci : cand) {
        if (witness_exact(X, S, classes[ci].front())) {
          classes[ci].push_back(S);
          placed = true;
          break;
        }
      }
      if (!placed) {
        cand.push_back(classes.size());
        classes.push_back({S});
      }
    }
  } else {
    // Cluster all pairwise squared distances of X so float keys are discrete.
    std::vector<double> vals;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) vals.push_back(dist_sq(X.fpoint(i), X.fpoint(j)));
    std::sort(vals.begin(), vals.end());
    std::vector<double> reps;
    for (double v : vals)
      if (reps.empty() || v - reps.back() > kTol) reps.push_back(v);
    auto cluster_of = [&](double v) {
      auto it = std::lower_bound(reps.begin(), reps.end(), v - kTol);
      return static_cast<int>(it - reps.begin());
    };
    std::map<std::vector<int>, std::vector<size_t>> group_classes;
    for (const auto& S : subsets) {
      std::vector<int> key;
      for (size_t a = 0; a < S.size(); ++a)
        for (size_t b = a + 1; b < S.size(); ++b)
          key.push_back(cluster_of(dist_sq(X.fpoint(S[a]), X.fpoint(S[b]))));
      std::sort(key.begin(), key.end());
      auto& cand = group_classes[key];
      bool placed = false;
      for (size_t ci : cand) {
        if (witness_float(X, S, classes[ci].front())) {
          classes[ci].push_back(S);
          placed = true;
          break;
        }
      }
      if (!placed) {
        cand.push_back(classes.size());
        classes.push_back({S});
      }
    }
  }

  std::vector<CongruencePair> out;
  for (const auto& cls : classes)
    for (size_t t = 0; t + 1 < cls.size(); ++t) out.push_back({cls[t], cls[t + 1]});
  return out;
}

}  // namespace moser
