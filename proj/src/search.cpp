#include "moserlp/search.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "moserlp/errors.hpp"

namespace moser {

namespace {

constexpr double kMinSeparation = 0.1;
constexpr double kAnchorTol = 1e-9;

// Coordinates collapsed to a 1e-9 lattice; sorting makes the key a
// canonical identity for the point set regardless of insertion order.
using CoordKey = std::vector<std::pair<long long, long long>>;

std::pair<long long, long long> snap(const FloatPoint& p) {
  return {std::llround(p.x * 1e9), std::llround(p.y * 1e9)};
}

CoordKey canonical_key(const std::vector<FloatPoint>& pts) {
  CoordKey key;
  key.reserve(pts.size());
  for (const auto& p : pts) key.push_back(snap(p));
  std::sort(key.begin(), key.end());
  return key;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double score_set(const PointSet& pts, const SearchConfig& cfg) {
  return upper_bound(pts, cfg.grid, cfg.iec_k_min, cfg.iec_k_max, cfg.dedup);
}

struct Candidate {
  std::vector<FloatPoint> pts;
  BirthMove mv;
  int parent_log = -1;
  CoordKey key;
  double score = 0;
  bool skipped = false;
  std::string reason;
};

void validate_config(const SearchConfig& cfg) {
  if (cfg.width < 1) throw UsageError("beam width must be at least 1");
  if (cfg.depth < 0) throw UsageError("search depth must be nonnegative");
  if (cfg.workers < 1) throw UsageError("worker count must be at least 1");
}

void score_candidates(std::vector<Candidate>& cands, const SearchConfig& cfg) {
  auto run_one = [&](Candidate& c) {
    try {
      c.score = score_set(PointSet::floating(c.pts), cfg);
    } catch (const SolverError& e) {
      c.skipped = true;
      c.reason = e.what();
    }
  };
  if (cfg.workers <= 1 || cands.size() <= 1) {
    for (auto& c : cands) run_one(c);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= cands.size()) return;
      try {
        run_one(cands[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fail_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  size_t nthreads = std::min<size_t>(cfg.workers, cands.size());
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (size_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

SearchResult run_search(std::vector<BeamNode> frontier, const SearchConfig& cfg) {
  SearchResult res;
  for (auto& node : frontier) {
    node.parent = -1;
    res.log.push_back(node);
  }

  auto better = [](const BeamNode& a, const BeamNode& b) {
    if (a.score != b.score) return a.score < b.score;
    return canonical_key(a.points.fpoints()) < canonical_key(b.points.fpoints());
  };
  size_t best_at = 0;
  for (size_t i = 1; i < frontier.size(); ++i)
    if (better(res.log[i], res.log[best_at])) best_at = i;
  res.best = res.log[best_at];

  std::vector<int> frontier_log;  // log index of each frontier member
  for (size_t i = 0; i < frontier.size(); ++i) frontier_log.push_back(int(i));

  int depth = frontier.empty() ? 0 : frontier[0].depth;
  while (depth < cfg.depth && !frontier.empty()) {
    ++depth;
    std::vector<Candidate> cands;
    std::map<CoordKey, size_t> seen;
    for (size_t f = 0; f < frontier.size(); ++f) {
      const BeamNode& node = frontier[f];
      for (const BirthMove& mv : generate_children(node)) {
        Candidate c;
        c.pts = node.points.fpoints();
        c.pts.push_back(mv.point);
        c.key = canonical_key(c.pts);
        if (seen.count(c.key)) continue;
        seen.emplace(c.key, cands.size());
        c.mv = mv;
        c.parent_log = frontier_log[f];
        cands.push_back(std::move(c));
      }
    }

    score_candidates(cands, cfg);

    std::vector<size_t> order;
    for (size_t i = 0; i < cands.size(); ++i) {
      if (cands[i].skipped) {
        res.diagnostics.push_back("depth " + std::to_string(depth) + ": child of #" +
                                  std::to_string(cands[i].parent_log) +
                                  " skipped: " + cands[i].reason);
        continue;
      }
      order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (cands[a].score != cands[b].score) return cands[a].score < cands[b].score;
      return cands[a].key < cands[b].key;
    });
    if (order.size() > size_t(cfg.width)) order.resize(size_t(cfg.width));

    std::vector<BeamNode> next;
    std::vector<int> next_log;
    for (size_t i : order) {
      Candidate& c = cands[i];
      BeamNode child;
      child.points = PointSet::floating(c.pts);
      child.score = c.score;
      child.depth = depth;
      child.parent = c.parent_log;
      child.births = res.log[c.parent_log].births;
      child.births.push_back(c.mv);
      next_log.push_back(int(res.log.size()));
      res.log.push_back(child);
      if (better(child, res.best)) res.best = child;
      next.push_back(std::move(child));
    }
    frontier = std::move(next);
    frontier_log = std::move(next_log);
  }
  return res;
}

}  // namespace

std::vector<BirthMove> generate_children(const BeamNode& node) {
  const auto& pts = node.points.fpoints();
  const int n = int(pts.size());
  std::vector<BirthMove> out;
  std::map<std::pair<long long, long long>, bool> seen;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dx = pts[j].x - pts[i].x;
      double dy = pts[j].y - pts[i].y;
      double d2 = dx * dx + dy * dy;
      if (!(d2 < 4.0) || d2 <= 0.0) continue;
      double d = std::sqrt(d2);
      double mx = (pts[i].x + pts[j].x) / 2;
      double my = (pts[i].y + pts[j].y) / 2;
      double h = std::sqrt(std::max(0.0, 1.0 - d2 / 4));
      // the two unit-circle intersections: midpoint +- h * rotated direction
      for (int sign : {1, -1}) {
        FloatPoint p{mx - sign * h * dy / d, my + sign * h * dx / d};
        bool ok = true;
        for (const auto& q : pts) {
          double qx = p.x - q.x, qy = p.y - q.y;
          if (qx * qx + qy * qy < kMinSeparation * kMinSeparation) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        auto key = snap(p);
        if (seen.count(key)) continue;
        seen.emplace(key, true);
        BirthMove mv;
        mv.point = p;
        mv.anchor_a = i;
        mv.anchor_b = j;
        out.push_back(mv);
      }
    }
  }
  return out;
}

SearchResult beam_search(const PointSet& root, const SearchConfig& cfg) {
  validate_config(cfg);
  if (root.size() < 2) throw UsageError("search needs a root with at least 2 points");
  BeamNode r;
  r.points = root.is_exact() ? root.to_float() : root;
  r.score = score_set(r.points, cfg);
  return run_search({r}, cfg);
}

SearchResult beam_search_from(const std::vector<BeamNode>& frontier,
                              const SearchConfig& cfg) {
  validate_config(cfg);
  if (frontier.empty()) throw UsageError("cannot resume from an empty frontier");
  for (const auto& node : frontier)
    if (node.depth != frontier[0].depth)
      throw UsageError("frontier nodes disagree on depth");
  return run_search(frontier, cfg);
}

void save_frontier(const std::vector<BeamNode>& frontier, std::ostream& out) {
  for (const auto& node : frontier) {
    out << node.depth << " " << format_double(node.score);
    for (const auto& p : node.points.fpoints())
      out << " " << format_double(p.x) << " " << format_double(p.y);
    if (!node.births.empty()) {
      out << " b";
      for (const auto& mv : node.births)
        out << " " << mv.anchor_a + 1 << " " << mv.anchor_b + 1;
    }
    out << "\n";
  }
}

std::vector<BeamNode> load_frontier(std::istream& in) {
  std::vector<BeamNode> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ss >> tok) toks.push_back(tok);
    if (toks.empty()) continue;

    size_t bmark = toks.size();
    for (size_t i = 0; i < toks.size(); ++i)
      if (toks[i] == "b") {
        bmark = i;
        break;
      }

    auto num = [&](size_t i) -> double {
      errno = 0;
      char* end = nullptr;
      double v = std::strtod(toks[i].c_str(), &end);
      if (end != toks[i].c_str() + toks[i].size())
        throw UsageError("frontier file: bad number '" + toks[i] + "'");
      return v;
    };
    auto idx = [&](size_t i) -> int {
      try {
        size_t pos = 0;
        int v = std::stoi(toks[i], &pos);
        if (pos != toks[i].size() || v < 1) throw std::runtime_error("");
        return v - 1;
      } catch (...) {
        throw UsageError("frontier file: bad index '" + toks[i] + "'");
      }
    };

    if (bmark < 6 || (bmark - 2) % 2 != 0)
      throw UsageError("frontier file: record needs depth, score, and 2+ points");
    if (bmark != toks.size() && (toks.size() - bmark - 1) % 2 != 0)
      throw UsageError("frontier file: birth list needs index pairs");

    BeamNode node;
    node.depth = int(num(0));
    node.score = num(1);
    std::vector<FloatPoint> pts;
    for (size_t i = 2; i + 2 <= bmark; i += 2) {
      FloatPoint fp;
      fp.x = num(i);
      fp.y = num(i + 1);
      pts.push_back(fp);
    }
    const int n = int(pts.size());
    std::vector<BirthMove> births;
    if (bmark != toks.size())
      for (size_t i = bmark + 1; i + 2 <= toks.size(); i += 2) {
        BirthMove mv;
        mv.anchor_a = idx(i);
        mv.anchor_b = idx(i + 1);
        births.push_back(mv);
      }
    if (int(births.size()) > n)
      throw ValidationError("frontier file: more births than points");
    const int seed_n = n - int(births.size());
    for (size_t k = 0; k < births.size(); ++k) {
      int born = seed_n + int(k);
      auto& mv = births[k];
      mv.point = pts[born];
      if (mv.anchor_a >= born || mv.anchor_b >= born || mv.anchor_a == mv.anchor_b)
        throw ValidationError("frontier file: anchors must precede the born point");
      for (int a : {mv.anchor_a, mv.anchor_b}) {
        double dx = pts[born].x - pts[a].x;
        double dy = pts[born].y - pts[a].y;
        if (std::fabs(std::sqrt(dx * dx + dy * dy) - 1.0) > kAnchorTol)
          throw ValidationError("frontier file: anchor not at unit distance");
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double dx = pts[i].x - pts[j].x;
        double dy = pts[i].y - pts[j].y;
        if (dx * dx + dy * dy <
            (kMinSeparation - kAnchorTol) * (kMinSeparation - kAnchorTol))
          throw ValidationError("frontier file: points closer than 0.1");
      }
    node.points = PointSet::floating(pts);
    node.births = std::move(births);
    out.push_back(std::move(node));
  }
  return out;
}

void save_frontier_file(const std::vector<BeamNode>& frontier, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write frontier file: " + path);
  save_frontier(frontier, out);
}

std::vector<BeamNode> load_frontier_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open frontier file: " + path);
  return load_frontier(in);
}

}  // namespace moser
