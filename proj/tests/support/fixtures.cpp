#include "support/fixtures.hpp"

#include <cstdlib>
#include <filesystem>

namespace testsupport {

std::string data_dir() {
  if (const char* env = std::getenv("MOSERLP_DATA")) return env;
  namespace fs = std::filesystem;
  for (const char* cand : {"data", "../data", "../../data"}) {
    if (fs::exists(fs::path(cand) / "x23.pts")) return cand;
  }
  return "data";
}

std::string data_file(const std::string& name) { return data_dir() + "/" + name; }

moser::PointSetFile load_fixture(const std::string& name) {
  return moser::load_point_set(data_file(name));
}

moser::PointSet spindle() { return load_fixture("moser-spindle.pts").points; }

moser::PointSet x23() { return load_fixture("x23.pts").points; }

}  // namespace testsupport
