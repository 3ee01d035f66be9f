#include "moserlp/point.hpp"

#include <algorithm>
#include <cmath>

#include "moserlp/errors.hpp"

namespace moser {

FieldElement dist_sq(const ExactPoint& p, const ExactPoint& q) {
  return (p - q).norm_sq();
}

double dist_sq(const FloatPoint& p, const FloatPoint& q) {
  double dx = p.x - q.x, dy = p.y - q.y;
  return dx * dx + dy * dy;
}

int point_lex_cmp(const ExactPoint& a, const ExactPoint& b) {
  int c = lex_cmp(a.re, b.re);
  return c != 0 ? c : lex_cmp(a.im, b.im);
}

PointSet PointSet::exact(std::vector<ExactPoint> pts) {
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j])
        throw ValidationError("point set has duplicate points (" + std::to_string(i + 1) +
                              ", " + std::to_string(j + 1) + ")");
    }
  }
  PointSet X;
  X.mode_ = Mode::exact;
  X.epts_ = std::move(pts);
  return X;
}

PointSet PointSet::floating(std::vector<FloatPoint> pts) {
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(pts[i].x) || !std::isfinite(pts[i].y))
      throw ValidationError("point " + std::to_string(i + 1) + " has non-finite coordinates");
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (dist_sq(pts[i], pts[j]) < 1e-12)
        throw ValidationError("points " + std::to_string(i + 1) + " and " +
                              std::to_string(j + 1) + " are closer than 1e-6");
    }
  }
  PointSet X;
  X.mode_ = Mode::floating;
  X.fpts_ = std::move(pts);
  return X;
}

int PointSet::size() const {
  return static_cast<int>(is_exact() ? epts_.size() : fpts_.size());
}

double PointSet::dist_sq_d(int i, int j) const {
  if (is_exact()) return dist_sq_exact(i, j).to_enclosure(1e-20).mid();
  return dist_sq(fpts_[i], fpts_[j]);
}

FieldElement PointSet::dist_sq_exact(int i, int j) const {
  if (!is_exact()) throw UsageError("exact distance requested on a floating point set");
  return dist_sq(epts_[i], epts_[j]);
}

PointSet PointSet::to_float() const {
  if (!is_exact()) return *this;
  std::vector<FloatPoint> out;
  out.reserve(epts_.size());
  for (const auto& p : epts_)
    out.push_back({p.re.to_enclosure(1e-20).mid(), p.im.to_enclosure(1e-20).mid()});
  return PointSet::floating(std::move(out));
}

int distinct_distances(const PointSet& X) {
  if (!X.is_exact()) throw UsageError("distinct_distances requires an exact point set");
  std::vector<FieldElement> all;
  for (int i = 0; i < X.size(); ++i)
    for (int j = i + 1; j < X.size(); ++j) all.push_back(X.dist_sq_exact(i, j));
  std::sort(all.begin(), all.end(),
            [](const FieldElement& a, const FieldElement& b) { return lex_cmp(a, b) < 0; });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return static_cast<int>(all.size());
}

}  // namespace moser
