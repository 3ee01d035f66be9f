#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "moserlp/moser_lp.hpp"
#include "moserlp/point.hpp"

namespace moser {

// A point added on top of two earlier points at unit distance from it.
struct BirthMove {
  FloatPoint point;
  int anchor_a = -1;
  int anchor_b = -1;
};

// Search state: a floating point set, its upper bound at the scoring grid,
// and the birth of every point after the seed prefix. Invariants: each
// born point sits at distance 1 (within 1e-9) from both anchors, which
// precede it, and all pairwise distances are at least 0.1.
struct BeamNode {
  PointSet points = PointSet::floating({});
  double score = 0;
  int depth = 0;
  int parent = -1;                // index into SearchResult::log, -1 if unknown
  std::vector<BirthMove> births;  // one per point past the seed prefix
};

struct SearchConfig {
  int width = 100;
  int depth = 0;
  FourierGrid grid{0.1, 120.0};  // coarse scoring grid
  int iec_k_min = 0;             // congruence policy for scoring solves
  int iec_k_max = 0;
  bool dedup = false;
  unsigned seed = 0;  // reserved: the search is deterministic by canonical order
  int workers = 1;
};

struct SearchResult {
  BeamNode best;                          // lowest score ever scored
  std::vector<BeamNode> log;              // every frontier member, root first
  std::vector<std::string> diagnostics;   // skipped children and their reason
};

// Candidate points at distance exactly 1 from two existing points: for each
// pair closer than 2, the intersections of the two unit circles around it,
// kept when at least 0.1 away from every existing point and deduplicated
// within 1e-9 (first anchor pair wins).
std::vector<BirthMove> generate_children(const BeamNode& node);

// Expands the frontier cfg.depth times, scoring every child with
// upper_bound on the scoring grid, keeping the best cfg.width children by
// (score, canonical coordinate key). Children whose scoring solve fails
// are skipped and logged in diagnostics. Identical child sets reached from
// different parents are scored once. An exact root is converted to
// floating form. Requires at least 2 points and width >= 1, depth >= 0.
SearchResult beam_search(const PointSet& root, const SearchConfig& cfg);

// Continues from a saved frontier (all nodes at the same depth) until
// cfg.depth. Parent links of the given nodes are treated as unknown.
SearchResult beam_search_from(const std::vector<BeamNode>& frontier,
                              const SearchConfig& cfg);

// Line-delimited frontier records: depth, score, coordinates, then the
// anchor pairs of the born points after a "b" marker (1-based on disk).
// load validates the BeamNode invariants and that depths agree.
void save_frontier(const std::vector<BeamNode>& frontier, std::ostream& out);
std::vector<BeamNode> load_frontier(std::istream& in);
void save_frontier_file(const std::vector<BeamNode>& frontier, const std::string& path);
std::vector<BeamNode> load_frontier_file(const std::string& path);

}  // namespace moser
