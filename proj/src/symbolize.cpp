#include "moserlp/symbolize.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "moserlp/errors.hpp"

namespace moser {

namespace {

constexpr double kMatchTol = 1e-6;

std::string strip_line(const std::string& raw) {
  std::string s = raw;
  if (!s.empty() && s.back() == '\r') s.pop_back();
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

struct ComplexOps {
  const Tower& tw;

  TowerPoint add(const TowerPoint& a, const TowerPoint& b) const {
    return {tw.add(a.re, b.re), tw.add(a.im, b.im)};
  }
  TowerPoint sub(const TowerPoint& a, const TowerPoint& b) const {
    return {tw.sub(a.re, b.re), tw.sub(a.im, b.im)};
  }
  TowerPoint scale(const TowerPoint& a, const TowerElement& s) const {
    return {tw.mul(a.re, s), tw.mul(a.im, s)};
  }
  TowerPoint rot90(const TowerPoint& a) const { return {tw.neg(a.im), a.re}; }
  TowerElement norm_sq(const TowerPoint& a) const {
    return tw.add(tw.mul(a.re, a.re), tw.mul(a.im, a.im));
  }
};

double dist2_num(double ax, double ay, const FloatPoint& t) {
  double dx = ax - t.x, dy = ay - t.y;
  return dx * dx + dy * dy;
}

void check_anchor_pair(int idx, int a, int b) {
  if (a < 0 || b < 0 || a >= idx || b >= idx || a == b)
    throw ValidationError("anchor pair of point " + std::to_string(idx + 1) +
                          " is invalid");
}

int parse_count(const std::vector<std::string>& toks, const char* word) {
  if (toks.size() != 2 || toks[0] != word)
    throw UsageError(std::string("expected '") + word + " N' header line");
  try {
    size_t used = 0;
    int n = std::stoi(toks[1], &used);
    if (used != toks[1].size() || n < 0) throw std::invalid_argument("");
    return n;
  } catch (const std::exception&) {
    throw UsageError(std::string("bad count on '") + word + "' line: " + toks[1]);
  }
}

std::optional<FieldElement> demote(const TowerElement& x) {
  if (x.level() == 0) return x.base();
  if (!x.hi().is_zero()) return std::nullopt;
  return demote(x.lo());
}

}  // namespace

SymbolizeResult symbolize(const PointSet& numeric, const BirthOrder& order) {
  if (numeric.is_exact())
    throw UsageError("symbolize expects numeric points; pass the floating form");
  if (numeric.size() != order.size())
    throw UsageError("order covers " + std::to_string(order.size()) +
                     " points but the numeric set has " +
                     std::to_string(numeric.size()));
  const int seed_n = static_cast<int>(order.seed.size());
  if (seed_n < 1) throw UsageError("order has an empty seed");

  SymbolizeResult res;
  res.points.reserve(numeric.size());
  res.rules.reserve(numeric.size());

  for (int i = 0; i < seed_n; ++i) {
    const ExactPoint& p = order.seed[i];
    const FloatPoint& t = numeric.fpoint(i);
    if (dist2_num(p.re.to_double(), p.im.to_double(), t) > kMatchTol * kMatchTol)
      throw ValidationError("seed point " + std::to_string(i + 1) +
                            " disagrees with its numeric coordinates");
    res.points.push_back(TowerPoint{res.tower.from_field(p.re), res.tower.from_field(p.im)});
    res.rules.push_back(0);
  }

  const FieldElement half(Rational(1, 2));
  const FieldElement root3_half(Rational(0), Rational(1, 2), Rational(0), Rational(0));
  const FieldElement four_f(Rational(4));

  for (size_t k = 0; k < order.anchors.size(); ++k) {
    const int idx = seed_n + static_cast<int>(k);
    const auto [a1, a2] = order.anchors[k];
    check_anchor_pair(idx, a1, a2);
    const FloatPoint& target = numeric.fpoint(idx);

    ComplexOps ops{res.tower};
    TowerPoint p;
    int rule = 0;

    for (int b = 0; b < idx && rule == 0; ++b) {
      const FloatPoint& pb = numeric.fpoint(b);
      for (int c = b + 1; c < idx && rule == 0; ++c) {
        const FloatPoint& pc = numeric.fpoint(c);
        for (int d = 0; d < idx; ++d) {
          if (d == b || d == c) continue;
          const FloatPoint& pd = numeric.fpoint(d);
          if (dist2_num(pb.x + pc.x - pd.x, pb.y + pc.y - pd.y, target) >
              kMatchTol * kMatchTol)
            continue;
          p = ops.sub(ops.add(res.points[b], res.points[c]), res.points[d]);
          rule = 1;
          break;
        }
      }
    }

    if (rule == 0) {
      const FloatPoint& nb = numeric.fpoint(a1);
      const FloatPoint& nc = numeric.fpoint(a2);
      double mx = (nb.x + nc.x) / 2, my = (nb.y + nc.y) / 2;
      double dx = nc.x - nb.x, dy = nc.y - nb.y;
      const double r3h = std::sqrt(3.0) / 2;
      int sign = dist2_num(mx - r3h * dy, my + r3h * dx, target) <=
                         dist2_num(mx + r3h * dy, my - r3h * dx, target)
                     ? 1
                     : -1;
      if (dist2_num(mx - sign * r3h * dy, my + sign * r3h * dx, target) <=
          kMatchTol * kMatchTol) {
        TowerPoint mid = ops.scale(ops.add(res.points[a1], res.points[a2]),
                                   res.tower.from_field(half));
        TowerPoint leg = ops.scale(ops.rot90(ops.sub(res.points[a2], res.points[a1])),
                                   res.tower.from_field(root3_half));
        p = sign > 0 ? ops.add(mid, leg) : ops.sub(mid, leg);
        rule = 2;
      }
    }

    if (rule == 0) {
      TowerPoint diff = ops.sub(res.points[a2], res.points[a1]);
      TowerElement len2 = ops.norm_sq(diff);
      TowerElement four = res.tower.from_field(four_f);
      double len2_num = res.tower.to_double(len2);
      if (!(len2_num > 0) || !(len2_num < 4) ||
          res.tower.sign(res.tower.sub(four, len2)) < 0)
        throw ValidationError("no reconstruction rule applies to point " +
                              std::to_string(idx + 1));
      TowerElement radicand =
          res.tower.div(res.tower.sub(four, len2), res.tower.mul(four, len2));
      AdjoinResult adj = adjoin_sqrt(res.tower, radicand);
      res.tower = adj.tower;
      ComplexOps ops2{res.tower};
      TowerPoint mid = ops2.scale(ops2.add(res.points[a1], res.points[a2]),
                                  res.tower.from_field(half));
      TowerPoint leg = ops2.scale(ops2.rot90(diff), adj.root);
      TowerPoint plus = ops2.add(mid, leg);
      TowerPoint minus = ops2.sub(mid, leg);
      double dplus = dist2_num(res.tower.to_double(plus.re),
                               res.tower.to_double(plus.im), target);
      double dminus = dist2_num(res.tower.to_double(minus.re),
                                res.tower.to_double(minus.im), target);
      p = dplus <= dminus ? plus : minus;
      if (std::min(dplus, dminus) > kMatchTol * kMatchTol)
        throw ValidationError("no reconstruction rule applies to point " +
                              std::to_string(idx + 1));
      rule = 3;
    }

    ComplexOps opsv{res.tower};
    TowerElement one = res.tower.from_field(FieldElement(Rational(1)));
    for (int a : {a1, a2}) {
      TowerElement d2 = opsv.norm_sq(opsv.sub(p, res.points[a]));
      if (!res.tower.equal(d2, one))
        throw ValidationError("reconstructed point " + std::to_string(idx + 1) +
                              " is not at unit distance from anchor " +
                              std::to_string(a + 1));
    }

    res.points.push_back(p);
    res.rules.push_back(rule);
  }

  return res;
}

PointSet base_field_points(const SymbolizeResult& r) {
  std::vector<ExactPoint> pts;
  pts.reserve(r.points.size());
  for (size_t i = 0; i < r.points.size(); ++i) {
    auto re = demote(r.points[i].re);
    auto im = demote(r.points[i].im);
    if (!re || !im)
      throw ValidationError("point " + std::to_string(i + 1) +
                            " needs radicals outside the base field");
    pts.push_back(ExactPoint{*re, *im});
  }
  return PointSet::exact(std::move(pts));
}

void print_order(const BirthOrder& o, std::ostream& out) {
  out << "seed " << o.seed.size() << "\n";
  for (const ExactPoint& p : o.seed)
    out << p.re.to_string() << " " << p.im.to_string() << "\n";
  out << "births " << o.anchors.size() << "\n";
  for (auto [a, b] : o.anchors) out << a + 1 << " " << b + 1 << "\n";
}

BirthOrder parse_order(std::istream& in) {
  std::vector<std::vector<std::string>> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    std::string s = strip_line(raw);
    if (!s.empty()) lines.push_back(split_ws(s));
  }
  size_t at = 0;
  auto next = [&]() -> const std::vector<std::string>& {
    if (at >= lines.size()) throw UsageError("order file ends early");
    return lines[at++];
  };

  BirthOrder o;
  int seed_n = parse_count(next(), "seed");
  if (seed_n < 1) throw UsageError("order file declares an empty seed");
  for (int i = 0; i < seed_n; ++i) {
    const auto& toks = next();
    if (toks.size() != 8)
      throw UsageError("seed line " + std::to_string(i + 1) +
                       " needs 8 coordinate tokens");
    auto re = parse_field_element({toks[0], toks[1], toks[2], toks[3]});
    auto im = parse_field_element({toks[4], toks[5], toks[6], toks[7]});
    if (!re || !im)
      throw UsageError("bad exact coordinate on seed line " + std::to_string(i + 1));
    o.seed.push_back(ExactPoint{*re, *im});
  }
  int birth_n = parse_count(next(), "births");
  for (int j = 0; j < birth_n; ++j) {
    const auto& toks = next();
    int v[2];
    if (toks.size() != 2)
      throw UsageError("birth line " + std::to_string(j + 1) +
                       " needs two anchor indices");
    for (int t = 0; t < 2; ++t) {
      try {
        size_t used = 0;
        v[t] = std::stoi(toks[t], &used);
        if (used != toks[t].size() || v[t] < 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw UsageError("bad anchor index on birth line " + std::to_string(j + 1) +
                         ": " + toks[t]);
      }
    }
    check_anchor_pair(seed_n + j, v[0] - 1, v[1] - 1);
    o.anchors.emplace_back(v[0] - 1, v[1] - 1);
  }
  if (at != lines.size()) throw UsageError("trailing content in order file");
  return o;
}

BirthOrder load_order(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open order file: " + path);
  return parse_order(in);
}

void save_order(const BirthOrder& o, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write order file: " + path);
  print_order(o, out);
}

}  // namespace moser
