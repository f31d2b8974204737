#pragma once

// The cube order on N_0^n: comparator, rank/unrank, initial segments, the
// (K, i, R) decomposition of segment lengths, and the interior/closure
// calculus on the ladder of closed segment sizes.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "projsum/checked.hpp"
#include "projsum/point.hpp"

namespace projsum {

// Guard against materializing absurdly large segments. Extremal values
// never need materialization; only explicit point generation does.
inline constexpr Int kDefaultMaxPoints = 1'000'000;

// Unique split m = (K+1)^i K^(n-i) + R with K^n <= m < (K+1)^n and
// 0 <= R < (K+1)^i K^(n-1-i).
struct CubeDecomposition {
  Int K = 1;
  int i = 0;
  Int R = 0;

  bool operator==(const CubeDecomposition&) const = default;
};

// Cube order comparator, implemented directly from the definition: x
// precedes y if the level sets {i : x_i = l} and {i : y_i = l} agree for
// every l above some l0, the membership at level l0 agrees on a suffix
// [j+1, n], and x_j < y_j = l0.
inline std::strong_ordering cube_cmp(const Point& x, const Point& y) {
  if (x.size() != y.size())
    throw invalid_argument("cube_cmp: dimension mismatch");
  const int n = static_cast<int>(x.size());
  Int top = 0;
  for (int j = 0; j < n; ++j) top = std::max({top, x[j], y[j]});
  for (Int level = top; level >= 0; --level) {
    // Highest index where membership in the level set differs decides.
    for (int j = n - 1; j >= 0; --j) {
      const bool in_x = (x[j] == level);
      const bool in_y = (y[j] == level);
      if (in_x == in_y) continue;
      return in_y ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

inline bool cube_less(const Point& x, const Point& y) {
  return cube_cmp(x, y) == std::strong_ordering::less;
}

// Largest K >= 0 with K^n <= m.
inline Int integer_nth_root(Int m, int n) {
  if (m < 0 || n < 1) throw invalid_argument("integer_nth_root: bad input");
  if (n == 1 || m <= 1) return m;
  Int lo = 1, hi = m;
  while (lo < hi) {
    Int mid = lo + (hi - lo + 1) / 2;
    if (pow_capped(mid, n, m) <= m)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

inline Int closed_size(int n, Int K, int i) {
  if (n < 1 || K < 0 || i < 0 || i > n - 1)
    throw invalid_argument("closed_size: out-of-range parameters");
  return ck_mul(ck_pow(K + 1, i), ck_pow(K, n - i));
}

// (K+1)^i K^(n-i), saturating at cap+1.
inline Int closed_size_capped(int n, Int K, int i, Int cap) {
  Int r = pow_capped(K + 1, i, cap);
  if (r > cap) return cap + 1;
  for (int t = 0; t < n - i; ++t) {
    if (K != 0 && r > cap / K) return cap + 1;
    r *= K;
    if (r > cap) return cap + 1;
  }
  return r;
}

inline CubeDecomposition decompose(int n, Int m) {
  if (n < 1) throw invalid_argument("decompose: n must be >= 1");
  if (m < 1) throw invalid_argument("decompose: m must be >= 1");
  const Int K = integer_nth_root(m, n);
  int i = 0;
  while (i + 1 <= n - 1 && closed_size_capped(n, K, i + 1, m) <= m) ++i;
  const Int block = closed_size(n, K, i);
  return CubeDecomposition{K, i, m - block};
}

inline bool is_closed(int n, Int m) {
  if (n < 1) throw invalid_argument("is_closed: n must be >= 1");
  if (m < 0) throw invalid_argument("is_closed: m must be >= 0");
  if (m == 0) return true;
  return decompose(n, m).R == 0;
}

// Steps along the ladder of closed segment sizes in dimension n.
inline Int next_closed_size(int n, Int K, int i) {
  if (i < n - 1) return closed_size(n, K, i + 1);
  return closed_size(n, K + 1, 0);
}

inline Int prev_closed_size(int n, Int K, int i) {
  if (i > 0) return closed_size(n, K, i - 1);
  if (K == 1) return 0;
  return closed_size(n, K - 1, n - 1);
}

// Largest edge of the closed segment with parameters (K, i): the first
// i axes have length K+1, the rest K.
inline Int closed_largest_edge(Int K, int i) { return i >= 1 ? K + 1 : K; }

struct HullSizes {
  Int interior = 0;
  Int strict_interior = 0;
  Int closure = 0;
  Int strict_closure = 0;
  Int boundary = 0;
  Int strict_boundary = 0;
};

inline HullSizes hull_sizes(int n, Int m) {
  if (m < 1) throw invalid_argument("hull_sizes: m must be >= 1");
  const CubeDecomposition d = decompose(n, m);
  const Int block = m - d.R;
  HullSizes h;
  h.interior = block;
  if (d.R == 0) {
    h.strict_interior = prev_closed_size(n, d.K, d.i);
    h.closure = m;
    h.strict_closure = next_closed_size(n, d.K, d.i);
  } else {
    h.strict_interior = block;
    h.closure = next_closed_size(n, d.K, d.i);
    h.strict_closure = h.closure;
  }
  h.boundary = m - h.interior;
  h.strict_boundary = m - h.strict_interior;
  return h;
}

inline Int interior_size(int n, Int m) {
  return m == 0 ? 0 : hull_sizes(n, m).interior;
}

inline Int strict_interior_size(int n, Int m) {
  return m == 0 ? 0 : hull_sizes(n, m).strict_interior;
}

// Largest edge of the closure of I_n(m), m >= 1.
inline Int closure_largest_edge(int n, Int m) {
  const CubeDecomposition d = decompose(n, m);
  if (d.R == 0) return closed_largest_edge(d.K, d.i);
  return d.K + 1;
}

// The point of N_0^n at 0-based position m in cube order. Recursive via
// the decomposition: the point closing I_n(m+1) is the last point of the
// remainder segment, embedded in the face x_{i+1} = K.
inline Point unrank(int n, Int m) {
  if (n < 1) throw invalid_argument("unrank: n must be >= 1");
  if (m < 0) throw invalid_argument("unrank: m must be >= 0");
  if (n == 1) return Point{m};
  if (m == 0) return Point(n, 0);
  const CubeDecomposition d = decompose(n, m);
  Point p = unrank(n - 1, d.R);
  p.insert(p.begin() + d.i, d.K);
  return p;
}

// Position of x in cube order; inverse of unrank. The point sits in the
// face x_{j+1} = K of its enclosing cube, where j+1 is the last axis
// attaining the maximum coordinate K.
inline Int rank(const Point& x) {
  const int n = static_cast<int>(x.size());
  if (n < 1) throw invalid_argument("rank: dimension must be >= 1");
  for (Int c : x)
    if (c < 0) throw invalid_argument("rank: negative coordinate");
  if (n == 1) return x[0];
  const Int K = *std::max_element(x.begin(), x.end());
  if (K == 0) return 0;
  int j = n - 1;
  while (x[j] != K) --j;
  Point rest;
  rest.reserve(n - 1);
  for (int t = 0; t < n; ++t)
    if (t != j) rest.push_back(x[t]);
  return ck_add(closed_size(n, K, j), rank(rest));
}

inline PointSet initial_segment(int n, Int m, Int max_points = kDefaultMaxPoints) {
  if (n < 1) throw invalid_argument("initial_segment: n must be >= 1");
  if (m < 0) throw invalid_argument("initial_segment: m must be >= 0");
  if (m > max_points)
    throw invalid_argument("initial_segment: m exceeds the materialization cap");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (Int k = 0; k < m; ++k) pts.push_back(unrank(n, k));
  return PointSet::make(n, std::move(pts));
}

// Order-preserving relabelling of each axis's used coordinate values onto
// {0, ..., s_j - 1}. Preserves the size and the full sigma/lambda
// profiles.
inline PointSet compress(const PointSet& a) {
  const int n = a.dim;
  std::vector<std::map<Int, Int>> remap(n);
  for (const Point& p : a.points)
    for (int j = 0; j < n; ++j) remap[j][p[j]] = 0;
  for (int j = 0; j < n; ++j) {
    Int next = 0;
    for (auto& [value, index] : remap[j]) index = next++;
  }
  std::vector<Point> pts;
  pts.reserve(a.points.size());
  for (const Point& p : a.points) {
    Point q(n);
    for (int j = 0; j < n; ++j) q[j] = remap[j].at(p[j]);
    pts.push_back(std::move(q));
  }
  return PointSet::make(n, std::move(pts));
}

}  // namespace projsum
