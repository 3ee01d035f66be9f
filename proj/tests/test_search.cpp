#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "moserlp/errors.hpp"
#include "moserlp/moser_lp.hpp"
#include "moserlp/search.hpp"
#include "support/fixtures.hpp"

using namespace moser;

namespace {

const double kRoot3 = std::sqrt(3.0);

BeamNode float_node(std::vector<FloatPoint> pts) {
  BeamNode n;
  n.points = PointSet::floating(std::move(pts));
  return n;
}

SearchConfig quick_config(int width, int depth) {
  SearchConfig cfg;
  cfg.width = width;
  cfg.depth = depth;
  cfg.grid = FourierGrid{0.1, 60.0};
  return cfg;
}

bool same_nodes(const BeamNode& a, const BeamNode& b) {
  if (a.depth != b.depth || a.score != b.score) return false;
  if (a.points.size() != b.points.size()) return false;
  for (int i = 0; i < a.points.size(); ++i) {
    if (a.points.fpoint(i).x != b.points.fpoint(i).x) return false;
    if (a.points.fpoint(i).y != b.points.fpoint(i).y) return false;
  }
  if (a.births.size() != b.births.size()) return false;
  for (size_t k = 0; k < a.births.size(); ++k) {
    if (a.births[k].anchor_a != b.births[k].anchor_a) return false;
    if (a.births[k].anchor_b != b.births[k].anchor_b) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("a unit pair spawns the two triangle apexes") {
  auto node = float_node({{0, 0}, {1, 0}});
  auto kids = generate_children(node);
  REQUIRE(kids.size() == 2);
  for (const auto& mv : kids) {
    CHECK(mv.anchor_a == 0);
    CHECK(mv.anchor_b == 1);
    CHECK(std::fabs(mv.point.x - 0.5) <= 1e-12);
    CHECK(std::fabs(std::fabs(mv.point.y) - kRoot3 / 2) <= 1e-12);
  }
  CHECK(kids[0].point.y != kids[1].point.y);
}

TEST_CASE("disjoint and tangent circles spawn nothing") {
  auto far = float_node({{0, 0}, {2.5, 0}});
  CHECK(generate_children(far).empty());
  auto tangent = float_node({{0, 0}, {2.0, 0}});
  CHECK(generate_children(tangent).empty());
}

TEST_CASE("candidates colliding with existing points are dropped") {
  auto node = float_node({{0, 0}, {1, 0}, {0.5, kRoot3 / 2}});
  auto kids = generate_children(node);
  REQUIRE(kids.size() == 3);
  for (const auto& mv : kids) {
    for (int i = 0; i < node.points.size(); ++i) {
      double dx = mv.point.x - node.points.fpoint(i).x;
      double dy = mv.point.y - node.points.fpoint(i).y;
      CHECK(dx * dx + dy * dy >= 0.1 * 0.1);
    }
    double ax = mv.point.x - node.points.fpoint(mv.anchor_a).x;
    double ay = mv.point.y - node.points.fpoint(mv.anchor_a).y;
    CHECK(std::fabs(std::sqrt(ax * ax + ay * ay) - 1.0) <= 1e-12);
  }
}

TEST_CASE("spindle children are anchored and separated") {
  BeamNode node;
  node.points = testsupport::spindle().to_float();
  auto kids = generate_children(node);
  CHECK(kids.size() > 10);
  CHECK(kids.size() < 42);
  for (const auto& mv : kids) {
    for (int a : {mv.anchor_a, mv.anchor_b}) {
      double dx = mv.point.x - node.points.fpoint(a).x;
      double dy = mv.point.y - node.points.fpoint(a).y;
      CHECK(std::fabs(std::sqrt(dx * dx + dy * dy) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("depth zero returns the scored root") {
  auto cfg = quick_config(1, 0);
  auto root = testsupport::spindle();
  auto res = beam_search(root, cfg);
  CHECK(res.log.size() == 1);
  CHECK(res.best.depth == 0);
  CHECK(res.best.points.size() == 7);
  double direct = upper_bound(root.to_float(), cfg.grid, 0, 0);
  CHECK(res.best.score == direct);
}

TEST_CASE("scores never increase along kept paths") {
  auto cfg = quick_config(3, 2);
  auto res = beam_search(PointSet::floating({{0, 0}, {1, 0}}), cfg);
  REQUIRE(res.log.size() > 1);
  for (const auto& node : res.log) {
    if (node.parent < 0) continue;
    const auto& par = res.log[node.parent];
    CHECK(node.score <= par.score + 1e-6);
    CHECK(node.depth == par.depth + 1);
    CHECK(node.points.size() == par.points.size() + 1);
    CHECK(node.births.size() == par.births.size() + 1);
  }
  CHECK(res.best.score <= res.log[0].score + 1e-6);
  CHECK(res.best.depth == 2);
}

TEST_CASE("beam keeps at most width nodes per level") {
  auto cfg = quick_config(2, 2);
  auto res = beam_search(PointSet::floating({{0, 0}, {1, 0}}), cfg);
  int by_depth[3] = {0, 0, 0};
  for (const auto& node : res.log) {
    REQUIRE(node.depth <= 2);
    ++by_depth[node.depth];
  }
  CHECK(by_depth[0] == 1);
  CHECK(by_depth[1] == 2);
  CHECK(by_depth[2] == 2);
}

TEST_CASE("worker pools do not change the outcome") {
  auto cfg1 = quick_config(4, 2);
  auto cfg3 = cfg1;
  cfg3.workers = 3;
  auto root = PointSet::floating({{0, 0}, {1, 0}});
  auto a = beam_search(root, cfg1);
  auto b = beam_search(root, cfg3);
  REQUIRE(a.log.size() == b.log.size());
  for (size_t i = 0; i < a.log.size(); ++i) {
    CHECK(same_nodes(a.log[i], b.log[i]));
    CHECK(a.log[i].parent == b.log[i].parent);
  }
  CHECK(a.best.score == b.best.score);
}

TEST_CASE("frontier files round-trip and resume seamlessly") {
  auto cfg = quick_config(3, 1);
  auto root = PointSet::floating({{0, 0}, {1, 0}});
  auto first = beam_search(root, cfg);
  std::vector<BeamNode> frontier;
  for (const auto& node : first.log)
    if (node.depth == 1) frontier.push_back(node);
  REQUIRE(!frontier.empty());

  std::ostringstream os;
  save_frontier(frontier, os);
  std::istringstream is(os.str());
  auto loaded = load_frontier(is);
  REQUIRE(loaded.size() == frontier.size());
  for (size_t i = 0; i < loaded.size(); ++i) CHECK(same_nodes(loaded[i], frontier[i]));

  std::ostringstream os2;
  save_frontier(loaded, os2);
  CHECK(os2.str() == os.str());

  auto cfg2 = quick_config(3, 2);
  auto resumed = beam_search_from(loaded, cfg2);
  auto direct = beam_search(root, cfg2);
  CHECK(resumed.best.score == direct.best.score);
  std::vector<const BeamNode*> rtail, dtail;
  for (const auto& n : resumed.log)
    if (n.depth == 2) rtail.push_back(&n);
  for (const auto& n : direct.log)
    if (n.depth == 2) dtail.push_back(&n);
  REQUIRE(rtail.size() == dtail.size());
  for (size_t i = 0; i < rtail.size(); ++i) CHECK(same_nodes(*rtail[i], *dtail[i]));
}

TEST_CASE("frontier loading validates the node invariants") {
  auto reject_validation = [](const std::string& text) {
    std::istringstream is(text);
    CHECK_THROWS_AS(load_frontier(is), ValidationError);
  };
  auto reject_usage = [](const std::string& text) {
    std::istringstream is(text);
    CHECK_THROWS_AS(load_frontier(is), UsageError);
  };
  // anchor distance is 0.5, not 1
  reject_validation("1 0.5 0 0 1 0 0.5 0.5 b 1 2\n");
  // born point listed before its anchor
  reject_validation("1 0.5 0 0 1 0 0.5 0.86602540378443864 b 2 3\n");
  // two points closer than 0.1
  reject_validation("0 0.5 0 0 1 0 1.001 0\n");
  reject_usage("1 x 0 0 1 0\n");
  reject_usage("1 0.5 0 0 1\n");
  reject_usage("1 0.5 0 0 1 0 b 1\n");

  std::istringstream ok("0 0.5 0 0 1 0\n# comment\n\n");
  auto nodes = load_frontier(ok);
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].points.size() == 2);
  CHECK(nodes[0].births.empty());
}

TEST_CASE("search configuration is validated") {
  SearchConfig bad_width;
  bad_width.width = 0;
  CHECK_THROWS_AS(beam_search(PointSet::floating({{0, 0}, {1, 0}}), bad_width), UsageError);
  SearchConfig bad_depth;
  bad_depth.depth = -1;
  CHECK_THROWS_AS(beam_search(PointSet::floating({{0, 0}, {1, 0}}), bad_depth), UsageError);
  SearchConfig cfg;
  CHECK_THROWS_AS(beam_search(PointSet::floating({{0, 0}}), cfg), UsageError);
  CHECK_THROWS_AS(beam_search_from({}, cfg), UsageError);
}
