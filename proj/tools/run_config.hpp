#pragma once

#include "minsurf/legendre.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace minsurf::cli {

// Optional JSON config; command-line flags override every field.
//   {"out": "dir", "formats": ["obj", "ply"], "tol_h": 1e-8, "eps_s": 1e-12,
//    "grids": {"phi9": "-2:2:50,-2:2:50"}}
struct RunConfig {
  std::map<std::string, GridSpec> grids;
  double tol_h = 1e-8;
  double eps_s = 1e-12;
  std::filesystem::path out = ".";
  std::vector<std::string> formats;

  GridSpec grid_for(const std::string &name) const;
  void validate() const;
  static RunConfig load(const std::filesystem::path &path);
};

// "pmin:pmax:pcount,qmin:qmax:qcount"
GridSpec parse_grid(const std::string &text);

} // namespace minsurf::cli
