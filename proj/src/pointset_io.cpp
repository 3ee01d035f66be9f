#include "moserlp/pointset_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "moserlp/errors.hpp"

namespace moser {

namespace {

// Strips comments and surrounding whitespace; empty result means skip.
std::string clean_line(const std::string& raw) {
  std::string s = raw;
  size_t hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PointSetFile parse_point_set(std::istream& in) {
  std::string line;
  bool have_header = false;
  bool exact_mode = false;
  int n = 0;
  std::vector<ExactPoint> epts;
  std::vector<FloatPoint> fpts;
  std::vector<std::pair<int, int>> edges;
  bool in_edges = false;
  bool have_edges_section = false;

  while (std::getline(in, line)) {
    std::string s = clean_line(line);
    if (s.empty()) continue;
    if (!have_header) {
      auto toks = split_ws(s);
      if (toks.size() != 2 || (toks[0] != "exact" && toks[0] != "float"))
        throw UsageError("point-set file: bad header '" + s + "'");
      exact_mode = toks[0] == "exact";
      try {
        n = std::stoi(toks[1]);
      } catch (...) {
        throw UsageError("point-set file: bad point count '" + toks[1] + "'");
      }
      if (n < 0) throw UsageError("point-set file: negative point count");
      have_header = true;
      continue;
    }
    if (s == "[edges]") {
      in_edges = true;
      have_edges_section = true;
      continue;
    }
    auto toks = split_ws(s);
    if (in_edges) {
      if (toks.size() != 2) throw UsageError("point-set file: edge line needs two indices");
      int a, b;
      try {
        a = std::stoi(toks[0]);
        b = std::stoi(toks[1]);
      } catch (...) {
        throw UsageError("point-set file: bad edge indices '" + s + "'");
      }
      if (a < 1 || b < 1 || a > n || b > n || a == b)
        throw UsageError("point-set file: edge indices out of range");
      edges.emplace_back(a - 1, b - 1);
      continue;
    }
    if (exact_mode) {
      if (toks.size() != 8) throw UsageError("point-set file: exact point needs 8 tokens");
      auto re = parse_field_element({toks[0], toks[1], toks[2], toks[3]});
      auto im = parse_field_element({toks[4], toks[5], toks[6], toks[7]});
      if (!re || !im) throw UsageError("point-set file: bad rational token in '" + s + "'");
      epts.push_back({*re, *im});
    } else {
      if (toks.size() != 2) throw UsageError("point-set file: float point needs 2 tokens");
      char* end = nullptr;
      double x = std::strtod(toks[0].c_str(), &end);
      bool okx = end && *end == '\0';
      double y = std::strtod(toks[1].c_str(), &end);
      bool oky = end && *end == '\0';
      if (!okx || !oky) throw UsageError("point-set file: bad float token in '" + s + "'");
      fpts.push_back({x, y});
    }
  }
  if (!have_header) throw UsageError("point-set file: missing header");
  size_t got = exact_mode ? epts.size() : fpts.size();
  if (static_cast<int>(got) != n)
    throw UsageError("point-set file: header declares " + std::to_string(n) + " points, found " +
                     std::to_string(got));

  PointSetFile out;
  out.points = exact_mode ? PointSet::exact(std::move(epts)) : PointSet::floating(std::move(fpts));
  if (have_edges_section) {
    const FieldElement one(Rational(1));
    for (auto [a, b] : edges) {
      bool unit = exact_mode
                      ? out.points.dist_sq_exact(a, b) == one
                      : std::fabs(dist_sq(out.points.fpoint(a), out.points.fpoint(b)) - 1.0) <= 1e-9;
      if (!unit)
        throw ValidationError("declared edge " + std::to_string(a + 1) + " " +
                              std::to_string(b + 1) + " is not at unit distance");
    }
    out.edges = std::move(edges);
  }
  return out;
}

void print_point_set(const PointSetFile& f, std::ostream& out) {
  const PointSet& X = f.points;
  out << (X.is_exact() ? "exact " : "float ") << X.size() << "\n";
  for (int i = 0; i < X.size(); ++i) {
    if (X.is_exact()) {
      const ExactPoint& p = X.epoint(i);
      out << p.re.to_string() << " " << p.im.to_string() << "\n";
    } else {
      const FloatPoint& p = X.fpoint(i);
      out << format_double(p.x) << " " << format_double(p.y) << "\n";
    }
  }
  if (f.edges) {
    out << "[edges]\n";
    for (auto [a, b] : *f.edges) out << a + 1 << " " << b + 1 << "\n";
  }
}

PointSetFile load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open point-set file: " + path);
  return parse_point_set(in);
}

void save_point_set(const PointSetFile& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write point-set file: " + path);
  print_point_set(f, out);
}

}  // namespace moser
