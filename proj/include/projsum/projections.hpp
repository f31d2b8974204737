#pragma once

// Projection profiles of arbitrary sets and the extremal values
// sigma_n(m) (hyperplane projections) and lambda_n(m) (axis projections),
// all in exact integer arithmetic.

#include <algorithm>
#include <set>
#include <vector>

#include "projsum/checked.hpp"
#include "projsum/core_order.hpp"
#include "projsum/point.hpp"

namespace projsum {

enum class ProfileKind { hyperplane, axis };

inline const char* to_string(ProfileKind k) {
  return k == ProfileKind::hyperplane ? "sigma" : "lambda";
}

struct ProjectionProfile {
  ProfileKind kind = ProfileKind::hyperplane;
  std::vector<Int> per_axis;
  Int total = 0;
};

// per_axis[i] = number of distinct (n-1)-tuples after deleting
// coordinate i; total = sigma_n(A).
inline ProjectionProfile sigma_profile(const PointSet& a) {
  const int n = a.dim;
  ProjectionProfile prof{ProfileKind::hyperplane, std::vector<Int>(n, 0), 0};
  if (a.empty()) return prof;
  std::vector<Point> shadow;
  shadow.reserve(a.points.size());
  for (int axis = 0; axis < n; ++axis) {
    shadow.clear();
    for (const Point& p : a.points) {
      Point q;
      q.reserve(n - 1);
      for (int j = 0; j < n; ++j)
        if (j != axis) q.push_back(p[j]);
      shadow.push_back(std::move(q));
    }
    std::sort(shadow.begin(), shadow.end());
    shadow.erase(std::unique(shadow.begin(), shadow.end()), shadow.end());
    prof.per_axis[axis] = static_cast<Int>(shadow.size());
    prof.total = ck_add(prof.total, prof.per_axis[axis]);
  }
  return prof;
}

// per_axis[i] = number of distinct values of coordinate i; total =
// lambda_n(A).
inline ProjectionProfile lambda_profile(const PointSet& a) {
  const int n = a.dim;
  ProjectionProfile prof{ProfileKind::axis, std::vector<Int>(n, 0), 0};
  if (a.empty()) return prof;
  for (int axis = 0; axis < n; ++axis) {
    std::set<Int> values;
    for (const Point& p : a.points) values.insert(p[axis]);
    prof.per_axis[axis] = static_cast<Int>(values.size());
    prof.total = ck_add(prof.total, prof.per_axis[axis]);
  }
  return prof;
}

// sigma_n of the closed segment with parameters (K, i), evaluated as
// i (K+1)^(i-1) K^(n-i) + (n-i) (K+1)^i K^(n-i-1) so every intermediate
// stays integral (the product form has a fractional factor at i = 0).
inline Int sigma_closed(int n, Int K, int i) {
  if (n < 1 || K < 1 || i < 0 || i > n - 1)
    throw invalid_argument("sigma_closed: out-of-range parameters");
  Int total = 0;
  if (i > 0)
    total = ck_mul(ck_mul(static_cast<Int>(i), ck_pow(K + 1, i - 1)),
                   ck_pow(K, n - i));
  if (i < n)
    total = ck_add(total, ck_mul(ck_mul(static_cast<Int>(n - i), ck_pow(K + 1, i)),
                                 ck_pow(K, n - i - 1)));
  return total;
}

// sigma_n(m) by the recursion sigma_n(m) = sigma_n((K+1)^i K^(n-i)) +
// sigma_{n-1}(R), with sigma_n(0) = 0 and sigma_1(m) = 1 for m > 0.
// n = 0 is the empty product of projections, conveniently 0.
inline Int sigma_segment(int n, Int m) {
  if (n < 0) throw invalid_argument("sigma_segment: n must be >= 0");
  if (m < 0) throw invalid_argument("sigma_segment: m must be >= 0");
  if (n == 0 || m == 0) return 0;
  if (n == 1) return 1;
  const CubeDecomposition d = decompose(n, m);
  return ck_add(sigma_closed(n, d.K, d.i), sigma_segment(n - 1, d.R));
}

// sigma_n(m) for all m in [0, m_max] at once.
inline std::vector<Int> sigma_table(int n, Int m_max) {
  std::vector<Int> table(static_cast<std::size_t>(m_max) + 1, 0);
  for (Int m = 1; m <= m_max; ++m) table[m] = sigma_segment(n, m);
  return table;
}

// lambda_n(m) = nK + i with K from the decomposition and i the smallest
// integer in [0, n] such that m <= (K+1)^i K^(n-i). Note the index range
// differs from the sigma decomposition, which keeps i <= n-1.
inline Int lambda_segment(int n, Int m) {
  if (n < 1) throw invalid_argument("lambda_segment: n must be >= 1");
  if (m < 0) throw invalid_argument("lambda_segment: m must be >= 0");
  if (m == 0) return 0;
  if (n == 1) return m;
  const Int K = integer_nth_root(m, n);
  int i = 0;
  while (closed_size_capped(n, K, i, m - 1) < m) ++i;
  return ck_add(ck_mul(static_cast<Int>(n), K), static_cast<Int>(i));
}

namespace detail {

inline unsigned __int128 u128_pow(unsigned __int128 base, int exp) {
  const unsigned __int128 kMax = ~static_cast<unsigned __int128>(0);
  unsigned __int128 r = 1;
  for (int k = 0; k < exp; ++k) {
    if (base != 0 && r > kMax / base)
      throw overflow_error("128-bit overflow in power");
    r *= base;
  }
  return r;
}

}  // namespace detail

// Sign of sigma_n(m)^n - n^n m^(n-1): the integer-exact restatement of
// the Loomis-Whitney/AM-GM lower bound, avoiding real roots.
inline int lw_agm_compare(int n, Int m) {
  if (n < 1) throw invalid_argument("lw_agm_compare: n must be >= 1");
  if (m < 0) throw invalid_argument("lw_agm_compare: m must be >= 0");
  if (m == 0) return 0;  // 0 = 0, and 0 is the n-th power of 0
  const unsigned __int128 lhs =
      detail::u128_pow(static_cast<unsigned __int128>(sigma_segment(n, m)), n);
  const unsigned __int128 nn = detail::u128_pow(static_cast<unsigned __int128>(n), n);
  const unsigned __int128 mm = detail::u128_pow(static_cast<unsigned __int128>(m), n - 1);
  if (mm != 0 && nn > ~static_cast<unsigned __int128>(0) / mm)
    throw overflow_error("128-bit overflow in lw_agm_compare");
  const unsigned __int128 rhs = nn * mm;
  if (lhs < rhs) return -1;
  return lhs == rhs ? 0 : 1;
}

inline bool lw_agm_holds(int n, Int m) { return lw_agm_compare(n, m) >= 0; }

}  // namespace projsum
