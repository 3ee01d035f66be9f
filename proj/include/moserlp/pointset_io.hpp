#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moserlp/point.hpp"

namespace moser {

// On-disk point set: header line "exact n" or "float n", one point per line
// (exact: 8 rational tokens, re then im over the basis {1,sqrt3,sqrt11,sqrt33};
// float: 2 decimal tokens), then an optional "[edges]" section of 1-based
// index pairs. '#' starts a comment. Declared edges are re-verified on load.
struct PointSetFile {
  PointSet points = PointSet::floating({});
  std::optional<std::vector<std::pair<int, int>>> edges;  // 0-based in memory
};

PointSetFile parse_point_set(std::istream& in);
void print_point_set(const PointSetFile& f, std::ostream& out);

PointSetFile load_point_set(const std::string& path);
void save_point_set(const PointSetFile& f, const std::string& path);

}  // namespace moser
