#include "moserlp/certified_min.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "moserlp/bessel.hpp"
#include "moserlp/errors.hpp"

namespace moser {

namespace {

constexpr double kEvalError = 1e-12;  // per-call Bessel accuracy
constexpr double kFineStep = 1.5e-7;  // refinement stops at steps this small

struct Candidate {
  double left;
  double minf;
};

}  // namespace

double WeightedBesselSum::eval(double t) const {
  double v = w0 == 0 ? const_term : const_term + w0 * bessel_j0(t);
  for (const auto& [coef, scale] : terms) v += coef * bessel_j0(scale * t);
  return v;
}

double WeightedBesselSum::oscillation_budget() const {
  double b = std::fabs(w0);
  for (const auto& [coef, scale] : terms) b += std::fabs(coef);
  return b;
}

double WeightedBesselSum::lipschitz_bound() const {
  double l = std::fabs(w0);
  for (const auto& [coef, scale] : terms) l += std::fabs(coef) * scale;
  return l;
}

CertifiedMinReport certified_min(const WeightedBesselSum& f, double T, double h) {
  if (!(T > 0) || !(h > 0) || h > T) throw UsageError("bad minimization window");
  if (!std::isfinite(f.w0) || !std::isfinite(f.const_term))
    throw UsageError("non-finite coefficient");
  for (const auto& [coef, scale] : f.terms)
    if (!std::isfinite(coef) || !(scale > 0) || !std::isfinite(scale))
      throw UsageError("non-finite or non-positive component frequency");

  double B = f.oscillation_budget();
  double L = f.lipschitz_bound();

  CertifiedMinReport rep;
  rep.oscillation_budget = B;
  rep.lipschitz = L;

  // base sweep: track the grid minimum and every interval whose certified
  // floor dips under the running minimum
  double slack = 0.5 * L * h + B * kEvalError;
  long long n = static_cast<long long>(std::floor(T / h));
  std::vector<Candidate> cand;
  double run_min = HUGE_VAL, run_arg = 0, all_floor = HUGE_VAL;
  double prev = 0, prev_t = 0;
  for (long long k = 0; k <= n + 1; ++k) {
    double t = k <= n ? k * h : T;
    if (k == n + 1 && n * h >= T) break;
    double v = f.eval(t);
    if (k > 0) {
      double minf = std::min(prev, v);
      all_floor = std::min(all_floor, minf - slack);
      if (minf - slack < run_min) {
        cand.push_back({prev_t, minf});
        if (cand.size() > (1u << 22))
          std::erase_if(cand, [&](const Candidate& c) { return c.minf - slack >= run_min; });
      }
    }
    if (v < run_min) {
      run_min = v;
      run_arg = t;
    }
    prev = v;
    prev_t = t;
  }
  rep.observed_min = run_min;
  rep.observed_argmin = run_arg;

  // keep only intervals that can still undercut the final grid minimum
  std::erase_if(cand, [&](const Candidate& c) { return c.minf - slack >= run_min; });

  if (cand.empty()) {
    rep.certified_lower = all_floor;
  } else {
    // refine each surviving interval tenfold per level; children whose floor
    // cannot reach the running refined minimum are discarded, which is sound
    // because discarded floors always exceed every later floor minimum
    double refined_min = run_min;
    double cert = HUGE_VAL;
    struct Frame {
      double left, step;
    };
    std::vector<Frame> stack;
    for (const auto& c : cand) stack.push_back({c.left, h});
    while (!stack.empty()) {
      Frame fr = stack.back();
      stack.pop_back();
      double child = fr.step / 10;
      double cslack = 0.5 * L * child + B * kEvalError;
      double vals[11];
      for (int i = 0; i <= 10; ++i) {
        vals[i] = f.eval(fr.left + i * child);
        refined_min = std::min(refined_min, vals[i]);
      }
      for (int i = 0; i < 10; ++i) {
        double minf = std::min(vals[i], vals[i + 1]);
        double floor = minf - cslack;
        if (floor >= refined_min) continue;
        if (child <= kFineStep)
          cert = std::min(cert, floor);
        else
          stack.push_back({fr.left + i * child, child});
      }
    }
    // every discarded interval's floor sits above refined_min, which in turn
    // sits at or above the surviving chain's final floor
    rep.certified_lower = cert < HUGE_VAL ? cert : refined_min - slack;
  }

  // tail: past T, each J0(scale*t) is bounded in magnitude by |J0(s)| at the
  // largest J1 zero s below T times the smallest frequency (extrema of J0
  // sit on J1 zeros and their envelope decays), with the frequency clamped
  // to 0.1 and the budget to at least 2 for slack against near-unit sums
  if (B == 0) {
    rep.tail_lower = f.const_term;
  } else {
    double min_scale = f.w0 != 0 ? 1.0 : HUGE_VAL;
    for (const auto& [coef, scale] : f.terms)
      if (coef != 0) min_scale = std::min(min_scale, scale);
    double edge = T * std::min(min_scale, 0.1);
    double envelope = 1.0;
    if (edge > 3.9) envelope = std::fabs(bessel_j0(largest_j1_zero_below(edge)));
    rep.tail_lower = f.const_term - std::max(2.0, B) * envelope;
  }
  return rep;
}

}  // namespace moser
