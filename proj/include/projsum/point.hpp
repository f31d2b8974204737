#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "projsum/checked.hpp"

namespace projsum {

// One lattice point in N_0^n.
using Point = std::vector<Int>;

// A finite duplicate-free set of lattice points sharing a dimension.
// Points are kept lexicographically sorted so that equality of sets is
// equality of representations.
struct PointSet {
  int dim = 1;
  std::vector<Point> points;

  static PointSet make(int dim, std::vector<Point> pts) {
    if (dim < 1) throw invalid_argument("PointSet: dimension must be >= 1");
    for (const Point& p : pts) {
      if (static_cast<int>(p.size()) != dim)
        throw invalid_argument("PointSet: dimension mismatch");
      for (Int c : p)
        if (c < 0) throw invalid_argument("PointSet: negative coordinate");
    }
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
      throw invalid_argument("PointSet: duplicate point");
    return PointSet{dim, std::move(pts)};
  }

  Int size() const { return static_cast<Int>(points.size()); }
  bool empty() const { return points.empty(); }

  bool operator==(const PointSet& other) const = default;
};

}  // namespace projsum
