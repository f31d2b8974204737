#pragma once

// Independent ground truth: exhaustive minimiser search over boxes,
// Cartesian-product structure detection, and exhaustive law suites for
// the subadditivity lemma, the slab restatement, the hull identity, and
// the one-dimensional (lambda) theory.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "projsum/checked.hpp"
#include "projsum/core_order.hpp"
#include "projsum/point.hpp"
#include "projsum/projections.hpp"
#include "projsum/rearrange.hpp"

namespace projsum {

class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScanOptions {
  Int budget = 100'000'000;  // candidate subsets; exceeding it refuses
  int threads = 1;
  int witness_cap = 16;
};

struct OracleResult {
  int n = 1;
  Int m = 0;
  std::vector<Int> box;
  ProfileKind kind = ProfileKind::hyperplane;
  Int min_value = 0;
  Int minimiser_count = 0;
  std::vector<PointSet> witnesses;  // first minimisers in colex order
};

struct LawReport {
  std::string law;
  std::string domain;
  Int cases_checked = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

namespace detail {

// C(n, k) saturating at cap+1.
inline Int binomial_capped(Int n, Int k, Int cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int r = 1;
  for (Int t = 1; t <= k; ++t) {
    // r * (n - k + t) / t is always integral at this point
    Int next;
    if (__builtin_mul_overflow(r, n - k + t, &next)) return cap + 1;
    r = next / t;
    if (r > cap) return cap + 1;
  }
  return r;
}

// Profile-total evaluator over cells of a fixed box, reusing buffers.
class BoxEvaluator {
 public:
  BoxEvaluator(ProfileKind kind, const std::vector<Int>& box) : box_(box) {
    const int n = static_cast<int>(box.size());
    Int cells = 1;
    for (Int side : box) cells = ck_mul(cells, side);
    proj_.assign(n, std::vector<int>(static_cast<std::size_t>(cells)));
    mark_.resize(n);
    for (int axis = 0; axis < n; ++axis) {
      Int space = 1;
      if (kind == ProfileKind::axis) {
        space = box[axis];
      } else {
        for (int j = 0; j < n; ++j)
          if (j != axis) space = ck_mul(space, box[j]);
      }
      mark_[axis].assign(static_cast<std::size_t>(space), 0);
      for (Int cell = 0; cell < cells; ++cell) {
        const Point p = cell_to_point(cell);
        Int idx = 0;
        if (kind == ProfileKind::axis) {
          idx = p[axis];
        } else {
          for (int j = 0; j < n; ++j)
            if (j != axis) idx = idx * box[j] + p[j];
        }
        proj_[axis][cell] = static_cast<int>(idx);
      }
    }
  }

  Point cell_to_point(Int cell) const {
    const int n = static_cast<int>(box_.size());
    Point p(n);
    for (int j = n - 1; j >= 0; --j) {
      p[j] = cell % box_[j];
      cell /= box_[j];
    }
    return p;
  }

  Int total(const std::vector<int>& cells) {
    ++gen_;
    Int total = 0;
    for (std::size_t axis = 0; axis < proj_.size(); ++axis) {
      Int distinct = 0;
      for (int cell : cells) {
        auto& slot = mark_[axis][proj_[axis][cell]];
        if (slot != gen_) {
          slot = gen_;
          ++distinct;
        }
      }
      total += distinct;
    }
    return total;
  }

  PointSet to_point_set(const std::vector<int>& cells) const {
    std::vector<Point> pts;
    pts.reserve(cells.size());
    for (int cell : cells) pts.push_back(cell_to_point(cell));
    return PointSet::make(static_cast<int>(box_.size()), std::move(pts));
  }

 private:
  std::vector<Int> box_;
  std::vector<std::vector<int>> proj_;
  std::vector<std::vector<unsigned long long>> mark_;
  unsigned long long gen_ = 0;
};

// Enumerate k-subsets of [0, limit) in colexicographic order.
template <typename Fn>
void for_each_combination(int limit, int k, Fn&& fn) {
  if (k > limit) return;
  std::vector<int> c(k);
  for (int j = 0; j < k; ++j) c[j] = j;
  if (k == 0) {
    fn(c);
    return;
  }
  for (;;) {
    fn(c);
    int j = 0;
    while (j < k) {
      const int ceiling = (j + 1 < k) ? c[j + 1] : limit;
      if (c[j] + 1 < ceiling) break;
      ++j;
    }
    if (j == k) return;
    ++c[j];
    for (int t = 0; t < j; ++t) c[t] = t;
  }
}

struct BlockResult {
  Int min_value = -1;
  Int count = 0;
  std::vector<std::vector<int>> witnesses;
};

inline void scan_block(ProfileKind kind, const std::vector<Int>& box, int m,
                       int highest_cell, int witness_cap, BlockResult& out) {
  BoxEvaluator eval(kind, box);
  std::vector<int> cells(static_cast<std::size_t>(m));
  cells[m - 1] = highest_cell;
  for_each_combination(highest_cell, m - 1, [&](const std::vector<int>& prefix) {
    std::copy(prefix.begin(), prefix.end(), cells.begin());
    const Int value = eval.total(cells);
    if (out.min_value < 0 || value < out.min_value) {
      out.min_value = value;
      out.count = 1;
      out.witnesses.assign(1, cells);
    } else if (value == out.min_value) {
      ++out.count;
      if (static_cast<int>(out.witnesses.size()) < witness_cap)
        out.witnesses.push_back(cells);
    }
  });
  if (static_cast<int>(out.witnesses.size()) > witness_cap)
    out.witnesses.resize(witness_cap);
}

inline void validate_box(int n, Int m, const std::vector<Int>& box) {
  if (n < 1 || static_cast<int>(box.size()) != n)
    throw invalid_argument("oracle: box must list one side per axis");
  Int cells = 1;
  for (Int side : box) {
    if (side < 1) throw invalid_argument("oracle: box sides must be >= 1");
    cells = ck_mul(cells, side);
  }
  if (m < 1) throw invalid_argument("oracle: m must be >= 1");
  if (cells < m) throw invalid_argument("oracle: box too small for m points");
  if (cells > (1LL << 22)) throw invalid_argument("oracle: box has too many cells");
}

}  // namespace detail

// Exact minimum of the chosen profile total over all m-subsets of the
// box, with a deterministic minimiser count and a capped witness list
// (the first minimisers in colexicographic order of cell indices).
// Enumeration splits into blocks by the highest cell index; blocks may
// run on several threads and are reduced in fixed order, so the result
// does not depend on the parallelism degree.
inline OracleResult brute_force_min(ProfileKind kind, int n, Int m,
                                    const std::vector<Int>& box,
                                    const ScanOptions& opts = {}) {
  detail::validate_box(n, m, box);
  Int cells = 1;
  for (Int side : box) cells *= side;
  const Int work = detail::binomial_capped(cells, m, opts.budget);
  if (work > opts.budget)
    throw budget_error("brute_force_min: candidate count exceeds the budget");

  const int mi = static_cast<int>(m);
  const int nblocks = static_cast<int>(cells) - mi + 1;
  std::vector<detail::BlockResult> blocks(static_cast<std::size_t>(nblocks));
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    for (int b = 0; b < nblocks; ++b)
      detail::scan_block(kind, box, mi, mi - 1 + b, opts.witness_cap, blocks[b]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int b = t; b < nblocks; b += threads)
          detail::scan_block(kind, box, mi, mi - 1 + b, opts.witness_cap, blocks[b]);
      });
    for (auto& th : pool) th.join();
  }

  OracleResult res;
  res.n = n;
  res.m = m;
  res.box = box;
  res.kind = kind;
  res.min_value = -1;
  detail::BoxEvaluator eval(kind, box);
  for (const auto& block : blocks) {
    if (block.min_value < 0) continue;
    if (res.min_value < 0 || block.min_value < res.min_value) {
      res.min_value = block.min_value;
      res.minimiser_count = block.count;
      res.witnesses.clear();
      for (const auto& w : block.witnesses)
        if (static_cast<int>(res.witnesses.size()) < opts.witness_cap)
          res.witnesses.push_back(eval.to_point_set(w));
    } else if (block.min_value == res.min_value) {
      res.minimiser_count += block.count;
      for (const auto& w : block.witnesses)
        if (static_cast<int>(res.witnesses.size()) < opts.witness_cap)
          res.witnesses.push_back(eval.to_point_set(w));
    }
  }
  return res;
}

// Visit every minimiser in colexicographic order (two scans: one for the
// minimum, one to stream the attaining subsets).
inline Int for_each_minimiser(ProfileKind kind, int n, Int m,
                              const std::vector<Int>& box, const ScanOptions& opts,
                              const std::function<void(const PointSet&)>& visit) {
  ScanOptions first = opts;
  first.witness_cap = 0;
  const OracleResult res = brute_force_min(kind, n, m, box, first);
  detail::BoxEvaluator eval(kind, box);
  Int cells = 1;
  for (Int side : box) cells *= side;
  Int seen = 0;
  detail::for_each_combination(static_cast<int>(cells), static_cast<int>(m),
                               [&](const std::vector<int>& subset) {
                                 if (eval.total(subset) == res.min_value) {
                                   ++seen;
                                   visit(eval.to_point_set(subset));
                                 }
                               });
  return res.min_value;
}

// Per-axis support sizes if A is the full Cartesian product of its
// per-axis supports, otherwise empty.
inline std::optional<std::vector<Int>> is_cartesian_product(const PointSet& a) {
  if (a.empty()) throw invalid_argument("is_cartesian_product: empty set");
  const int n = a.dim;
  std::vector<std::set<Int>> support(n);
  for (const Point& p : a.points)
    for (int j = 0; j < n; ++j) support[j].insert(p[j]);
  Int product = 1;
  std::vector<Int> sizes(n);
  for (int j = 0; j < n; ++j) {
    sizes[j] = static_cast<Int>(support[j].size());
    product = ck_mul(product, sizes[j]);
  }
  if (product != a.size()) return std::nullopt;
  return sizes;
}

namespace detail {

inline bool factor_multiset_matches(const std::vector<Int>& factors, int n, Int K,
                                    int i) {
  std::vector<Int> sorted = factors;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (int j = 0; j < n; ++j)
    if (sorted[j] != (j < i ? K + 1 : K)) return false;
  return true;
}

}  // namespace detail

// Stability at a closed size: every minimiser of the chosen profile found
// in the box must be a Cartesian product with i factors of size K+1 and
// n-i of size K.
inline LawReport check_stability(ProfileKind kind, int n, Int K, int i,
                                 const std::vector<Int>& box,
                                 const ScanOptions& opts = {}) {
  const Int m = closed_size(n, K, i);
  LawReport report;
  report.law = kind == ProfileKind::hyperplane ? "stability" : "lambda_stability";
  report.domain = "n=" + std::to_string(n) + " K=" + std::to_string(K) +
                  " i=" + std::to_string(i) + " m=" + std::to_string(m);
  const Int expected = kind == ProfileKind::hyperplane ? sigma_segment(n, m)
                                                       : lambda_segment(n, m);
  const Int found =
      for_each_minimiser(kind, n, m, box, opts, [&](const PointSet& a) {
        ++report.cases_checked;
        const auto factors = is_cartesian_product(a);
        if (!factors || !detail::factor_multiset_matches(*factors, n, K, i))
          report.violations.push_back("minimiser #" +
                                      std::to_string(report.cases_checked) +
                                      " is not a {K+1^i, K^(n-i)} product");
      });
  if (found != expected)
    report.violations.push_back("minimum " + std::to_string(found) +
                                " does not equal the extremal value " +
                                std::to_string(expected));
  return report;
}

// The two-dimensional family [0, K-C] x [0, K+C] attains sigma_2 at the
// non-closed size (K+1)^2 - C^2 without being an initial segment: the
// counterpart showing stability genuinely needs closedness.
inline LawReport check_sigma2_counterexample(Int K, Int C) {
  if (K < C || C < 1)
    throw invalid_argument("check_sigma2_counterexample: requires K >= C >= 1");
  LawReport report;
  report.law = "stability";
  report.domain = "counterexample K=" + std::to_string(K) + " C=" + std::to_string(C);
  std::vector<Point> pts;
  for (Int x = 0; x <= K - C; ++x)
    for (Int y = 0; y <= K + C; ++y) pts.push_back({x, y});
  const PointSet a = PointSet::make(2, std::move(pts));
  const Int m = a.size();
  report.cases_checked = 1;
  if (m != (K + 1) * (K + 1) - C * C)
    report.violations.push_back("unexpected family size");
  if (sigma_profile(a).total != sigma_segment(2, m))
    report.violations.push_back("family member is not a minimiser");
  if (is_closed(2, m))
    report.violations.push_back("size unexpectedly closed");
  if (segment_permutation(a))
    report.violations.push_back("family member is an initial segment");
  return report;
}

// Lemma law i): sigma_n(l1) + sigma_n(l2) <= sigma_n(m1) + sigma_n(m2)
// whenever l1 <= m1 <= m2 <= l2, m1 + m2 = l1 + l2 and I_n(l2) is closed.
inline LawReport check_lemma_sub_i(int n, Int m_max) {
  LawReport report{"sub_i", "n=" + std::to_string(n) + " args<=" + std::to_string(m_max)};
  const std::vector<Int> sig = sigma_table(n, m_max);
  for (Int l2 = 1; l2 <= m_max; ++l2) {
    if (!is_closed(n, l2)) continue;
    for (Int m2 = 0; m2 <= l2; ++m2)
      for (Int m1 = std::max<Int>(0, l2 - m2); m1 <= m2; ++m1) {
        const Int l1 = m1 + m2 - l2;
        ++report.cases_checked;
        if (sig[l1] + sig[l2] > sig[m1] + sig[m2])
          report.violations.push_back(
              "l1=" + std::to_string(l1) + " m1=" + std::to_string(m1) +
              " m2=" + std::to_string(m2) + " l2=" + std::to_string(l2));
      }
  }
  return report;
}

// Lemma law ii): strict subadditivity.
inline LawReport check_lemma_sub_ii(int n, Int m_max) {
  LawReport report{"sub_ii", "n=" + std::to_string(n) + " m1+m2<=" + std::to_string(m_max)};
  const std::vector<Int> sig = sigma_table(n, m_max);
  for (Int m1 = 1; m1 <= m_max; ++m1)
    for (Int m2 = m1; m1 + m2 <= m_max; ++m2) {
      ++report.cases_checked;
      if (sig[m1 + m2] >= sig[m1] + sig[m2])
        report.violations.push_back("m1=" + std::to_string(m1) +
                                    " m2=" + std::to_string(m2));
    }
  return report;
}

// Lemma law iii): sigma_n(m) > sigma_{n-1}(m) for n >= 2, m >= 1.
inline LawReport check_lemma_sub_iii(int n, Int m_max) {
  if (n < 2) throw invalid_argument("check_lemma_sub_iii: requires n >= 2");
  LawReport report{"sub_iii", "n=" + std::to_string(n) + " m<=" + std::to_string(m_max)};
  const std::vector<Int> hi = sigma_table(n, m_max);
  const std::vector<Int> lo = sigma_table(n - 1, m_max);
  for (Int m = 1; m <= m_max; ++m) {
    ++report.cases_checked;
    if (hi[m] <= lo[m]) report.violations.push_back("m=" + std::to_string(m));
  }
  return report;
}

inline std::vector<LawReport> check_lemma_sub(int n, Int m_max) {
  std::vector<LawReport> reports;
  reports.push_back(check_lemma_sub_i(n, m_max));
  reports.push_back(check_lemma_sub_ii(n, m_max));
  if (n >= 2) reports.push_back(check_lemma_sub_iii(n, m_max));
  return reports;
}

// Hull identity: sigma_n(m) = sigma_n(|strict interior|) +
// sigma_{n-1}(|strict boundary|) for m >= 2; for m = 1 the left side
// exceeds the right by exactly 1.
inline LawReport check_idt(int n, Int m_max) {
  if (n < 2) throw invalid_argument("check_idt: requires n >= 2");
  LawReport report{"idt", "n=" + std::to_string(n) + " m<=" + std::to_string(m_max)};
  for (Int m = 1; m <= m_max; ++m) {
    ++report.cases_checked;
    const HullSizes h = hull_sizes(n, m);
    const Int lhs = sigma_segment(n, m);
    const Int rhs =
        sigma_segment(n, h.strict_interior) + sigma_segment(n - 1, h.strict_boundary);
    const Int expected_gap = (m == 1) ? 1 : 0;
    if (lhs - rhs != expected_gap)
      report.violations.push_back("m=" + std::to_string(m));
  }
  return report;
}

// One slab-restatement instance: checks the inequality
// sigma_n(sum m_k) <= sum sigma_{n-1}(m_k) + max m_k and, for n >= 2,
// that the witness set with slab lengths m_k attains the right-hand side
// exactly.
inline LawReport check_restate(int n, const std::vector<Int>& m_list,
                               Int cap = kDefaultMaxPoints) {
  if (n < 1 || m_list.empty())
    throw invalid_argument("check_restate: requires n >= 1 and s >= 1");
  LawReport report{"restate", "n=" + std::to_string(n) + " s=" + std::to_string(m_list.size())};
  Int total = 0, rhs = 0, largest = 0;
  for (Int mk : m_list) {
    if (mk < 0) throw invalid_argument("check_restate: negative slab length");
    total = ck_add(total, mk);
    rhs = ck_add(rhs, sigma_segment(n - 1, mk));
    largest = std::max(largest, mk);
  }
  rhs = ck_add(rhs, largest);
  ++report.cases_checked;
  if (sigma_segment(n, total) > rhs)
    report.violations.push_back("inequality fails for the given tuple");
  if (n >= 2) {
    std::vector<Point> pts;
    for (std::size_t k = 0; k < m_list.size(); ++k) {
      const PointSet body = initial_segment(n - 1, m_list[k], cap);
      for (const Point& q : body.points) {
        Point p = q;
        p.push_back(static_cast<Int>(k));
        pts.push_back(std::move(p));
      }
    }
    const PointSet witness = PointSet::make(n, std::move(pts));
    ++report.cases_checked;
    if (sigma_profile(witness).total != rhs)
      report.violations.push_back("slab witness does not attain the right-hand side");
  }
  return report;
}

inline LawReport check_restate_suite(Int trials, int n_max, int s_max, Int mk_max,
                                     unsigned long long seed) {
  LawReport report{"restate", "trials=" + std::to_string(trials) +
                                  " n<=" + std::to_string(n_max) +
                                  " s<=" + std::to_string(s_max) +
                                  " m_k<=" + std::to_string(mk_max) +
                                  " seed=" + std::to_string(seed)};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_n(2, std::max(2, n_max));
  std::uniform_int_distribution<int> pick_s(1, std::max(1, s_max));
  std::uniform_int_distribution<Int> pick_m(0, mk_max);
  for (Int t = 0; t < trials; ++t) {
    const int n = pick_n(rng);
    const int s = pick_s(rng);
    std::vector<Int> m_list(static_cast<std::size_t>(s));
    for (Int& mk : m_list) mk = pick_m(rng);
    const LawReport one = check_restate(n, m_list);
    report.cases_checked += one.cases_checked;
    for (const std::string& v : one.violations)
      report.violations.push_back("trial " + std::to_string(t) + ": " + v);
  }
  return report;
}

// Increment law: lambda_n(m+1) - lambda_n(m) is 1 exactly when I_n(m) is
// closed, 0 otherwise.
inline LawReport check_hz19(int n, Int m_max) {
  LawReport report{"hz19", "n=" + std::to_string(n) + " m<=" + std::to_string(m_max)};
  // the law starts at m = 1: the first point contributes n, not 1
  Int prev = lambda_segment(n, 1);
  for (Int m = 1; m < m_max; ++m) {
    ++report.cases_checked;
    const Int next = lambda_segment(n, m + 1);
    const Int expected = is_closed(n, m) ? 1 : 0;
    if (next - prev != expected) report.violations.push_back("m=" + std::to_string(m));
    prev = next;
  }
  return report;
}

// lambda_n(m) = nK + i against a direct incremental count of the axis
// supports of the materialized segment.
inline LawReport check_lambda_closed_form(int n, Int m_max,
                                          Int cap = kDefaultMaxPoints) {
  LawReport report{"lambda_closed", "n=" + std::to_string(n) + " m<=" + std::to_string(m_max)};
  std::vector<std::set<Int>> support(static_cast<std::size_t>(n));
  Int direct = 0;
  for (Int m = 1; m <= std::min(m_max, cap); ++m) {
    const Point p = unrank(n, m - 1);
    for (int j = 0; j < n; ++j)
      if (support[j].insert(p[j]).second) ++direct;
    ++report.cases_checked;
    if (direct != lambda_segment(n, m))
      report.violations.push_back("m=" + std::to_string(m));
  }
  return report;
}

// Appendix bound lambda_n(s m) <= lambda_{n-1}(m) + s.
inline LawReport check_lambda_restate(int n, Int m_max, Int s_max) {
  if (n < 2) throw invalid_argument("check_lambda_restate: requires n >= 2");
  LawReport report{"lambda_restate", "n=" + std::to_string(n) + " m<=" + std::to_string(m_max) +
                                         " s<=" + std::to_string(s_max)};
  for (Int m = 0; m <= m_max; ++m)
    for (Int s = 0; s <= s_max; ++s) {
      ++report.cases_checked;
      if (lambda_segment(n, ck_mul(s, m)) > lambda_segment(n - 1, m) + s)
        report.violations.push_back("m=" + std::to_string(m) + " s=" + std::to_string(s));
    }
  return report;
}

inline std::vector<LawReport> check_lambda_laws(int n, Int m_max, Int s_max) {
  std::vector<LawReport> reports;
  reports.push_back(check_hz19(n, m_max));
  reports.push_back(check_lambda_closed_form(n, std::min<Int>(m_max, 20'000)));
  if (n >= 2) reports.push_back(check_lambda_restate(n, std::min<Int>(m_max, 200), s_max));
  return reports;
}

// Integer-exact lower bound sigma_n(m)^n >= n^n m^(n-1), with equality
// exactly at the perfect n-th powers.
inline LawReport check_lw_agm(int n, Int m_max) {
  LawReport report{"lw_agm", "n=" + std::to_string(n) + " m<=" + std::to_string(m_max)};
  for (Int m = 0; m <= m_max; ++m) {
    ++report.cases_checked;
    const int cmp = lw_agm_compare(n, m);
    if (cmp < 0) {
      report.violations.push_back("bound fails at m=" + std::to_string(m));
      continue;
    }
    const Int root = integer_nth_root(m, n);
    const bool perfect_power = ck_pow(root, n) == m;
    if ((cmp == 0) != perfect_power)
      report.violations.push_back("equality pattern wrong at m=" + std::to_string(m));
  }
  return report;
}

inline PointSet random_point_set(std::mt19937_64& rng, int n, Int size, Int coord_max) {
  std::uniform_int_distribution<Int> coord(0, coord_max);
  std::set<Point> chosen;
  while (static_cast<Int>(chosen.size()) < size) {
    Point p(static_cast<std::size_t>(n));
    for (Int& c : p) c = coord(rng);
    chosen.insert(std::move(p));
  }
  return PointSet::make(n, std::vector<Point>(chosen.begin(), chosen.end()));
}

// Seeded random sets: checks the sigma and lambda lower bounds and runs
// the rearrangement pipeline on each input, validating its trace.
inline LawReport random_lower_bound_suite(Int trials, int n_max, Int m_max,
                                          Int coord_max, unsigned long long seed) {
  LawReport report{"random", "trials=" + std::to_string(trials) + " n<=" + std::to_string(n_max) +
                                 " |A|<=" + std::to_string(m_max) +
                                 " coords<=" + std::to_string(coord_max) +
                                 " seed=" + std::to_string(seed)};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_n(2, std::max(2, n_max));
  for (Int t = 0; t < trials; ++t) {
    const int n = pick_n(rng);
    Int cells = 1;
    for (int j = 0; j < n; ++j) cells = std::min<Int>(ck_mul(cells, coord_max + 1), m_max);
    std::uniform_int_distribution<Int> pick_m(1, std::min(m_max, cells));
    const PointSet a = random_point_set(rng, n, pick_m(rng), coord_max);
    const Int m = a.size();
    ++report.cases_checked;
    auto fail = [&](const std::string& what) {
      report.violations.push_back("trial " + std::to_string(t) + ": " + what);
    };
    if (sigma_profile(a).total < sigma_segment(n, m)) fail("sigma lower bound fails");
    if (lambda_profile(a).total < lambda_segment(n, m)) fail("lambda lower bound fails");
    try {
      const RearrangeTrace trace = rearrange_to_segment(a);
      for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        if (trace.steps[k].set.size() != m) fail("trace step changes cardinality");
        if (k > 0 && trace.steps[k].sigma > trace.steps[k - 1].sigma)
          fail("trace sigma increases");
      }
      if (trace.final != initial_segment(n, m)) fail("final set is not the segment");
      if (trace.steps.back().sigma != sigma_segment(n, m))
        fail("final sigma differs from the extremal value");
    } catch (const pipeline_error& e) {
      fail(std::string("pipeline: ") + e.what());
    }
  }
  return report;
}

}  // namespace projsum
