#pragma once

#include <vector>

namespace moser {

// f(t) = w0 * J0(t) + const_term + sum_i coef_i * J0(scale_i * t).
struct WeightedBesselSum {
  struct Term {
    double coef = 0;
    double scale = 0;
  };
  double w0 = 0;
  double const_term = 0;
  std::vector<Term> terms;

  double eval(double t) const;
  double oscillation_budget() const;  // |w0| + sum |coef_i|
  double lipschitz_bound() const;     // |w0| + sum |coef_i| * scale_i
};

struct CertifiedMinReport {
  double observed_min = 0;     // smallest sample on the requested grid
  double observed_argmin = 0;
  double certified_lower = 0;  // rigorous lower bound of f over [0, T]
  double tail_lower = 0;       // rigorous lower bound of f over [T, inf)
  double oscillation_budget = 0;
  double lipschitz = 0;
};

// Samples [0, T] at step h, then locally refines every interval that could
// dip below the observed minimum, tightening the Lipschitz slack to a step
// of about 1e-7. The tail bound caps every oscillatory component by the
// first J0 envelope extremum past T times the smallest frequency.
CertifiedMinReport certified_min(const WeightedBesselSum& f, double T, double h);

}  // namespace moser
