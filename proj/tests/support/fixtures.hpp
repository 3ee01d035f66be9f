#pragma once

#include <string>

#include "moserlp/pointset_io.hpp"

namespace testsupport {

// Root of the bundled data files; from MOSERLP_DATA or ../data, else ./data.
std::string data_dir();
std::string data_file(const std::string& name);

moser::PointSetFile load_fixture(const std::string& name);

// The 7-point unit-distance graph used as the search root.
moser::PointSet spindle();
moser::PointSet x23();

}  // namespace testsupport
