// projsum: exact extremal projection sums over the cube order.
//
// Verbs: segment, rank, unrank, sigma, lambda, profile, minimise, oracle,
// verify. Data goes to stdout, diagnostics to stderr. Exit codes:
// 0 success, 1 violation found, 2 usage or parse error, 3 budget refusal.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "projsum/core_order.hpp"
#include "projsum/oracle.hpp"
#include "projsum/pointset_io.hpp"
#include "projsum/projections.hpp"
#include "projsum/rearrange.hpp"

namespace {

using namespace projsum;

PointSet load_pointset(const std::string& path) {
  if (path == "-") return parse_pointset(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_pointset(in);
}

ProfileKind parse_kind(const std::string& kind) {
  if (kind == "sigma") return ProfileKind::hyperplane;
  if (kind == "lambda") return ProfileKind::axis;
  throw CLI::ValidationError("--kind", "must be sigma or lambda");
}

int report_laws(const std::vector<LawReport>& reports, bool json) {
  bool ok = true;
  for (const LawReport& report : reports) {
    ok = ok && report.ok();
    if (json) {
      std::cout << to_json(report).dump() << '\n';
    } else {
      std::cout << report.law << " [" << report.domain << "]: "
                << report.cases_checked << " cases, "
                << report.violations.size() << " violations\n";
      for (const std::string& v : report.violations)
        std::cout << "  violation: " << v << '\n';
    }
  }
  return ok ? 0 : 1;
}

struct VerifyParams {
  std::string suite;
  int n = 2;
  Int mmax = 300;
  Int smax = 20;
  Int mkmax = 50;
  Int trials = 1000;
  Int coordmax = 15;
  unsigned long long seed = 0;
  ScanOptions scan;
};

std::vector<LawReport> run_suite(const VerifyParams& p) {
  std::vector<LawReport> reports;
  if (p.suite == "sub") {
    reports = check_lemma_sub(p.n, p.mmax);
  } else if (p.suite == "restate") {
    reports.push_back(check_restate_suite(p.trials, p.n, static_cast<int>(p.smax),
                                          p.mkmax, p.seed));
  } else if (p.suite == "idt") {
    reports.push_back(check_idt(p.n, p.mmax));
  } else if (p.suite == "hz19") {
    reports.push_back(check_hz19(p.n, p.mmax));
  } else if (p.suite == "lw") {
    reports.push_back(check_lw_agm(p.n, p.mmax));
  } else if (p.suite == "stability") {
    for (Int m : {2, 4, 6, 9, 12}) {
      const CubeDecomposition d = decompose(2, m);
      reports.push_back(
          check_stability(ProfileKind::hyperplane, 2, d.K, d.i, {4, 4}, p.scan));
    }
    reports.push_back(
        check_stability(ProfileKind::hyperplane, 3, 1, 2, {3, 3, 3}, p.scan));
    reports.push_back(check_sigma2_counterexample(3, 1));
  } else if (p.suite == "lambda") {
    reports = check_lambda_laws(p.n, p.mmax, p.smax);
    reports.push_back(check_stability(ProfileKind::axis, 2, 2, 0, {4, 4}, p.scan));
    reports.push_back(check_stability(ProfileKind::axis, 3, 2, 0, {3, 3, 3}, p.scan));
  } else if (p.suite == "random") {
    reports.push_back(
        random_lower_bound_suite(p.trials, p.n, p.mmax, p.coordmax, p.seed));
  } else {
    throw CLI::ValidationError("--suite", "unknown suite '" + p.suite + "'");
  }
  return reports;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Exact minimisation of projection sums over the cube order"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit JSON instead of text");

  int n = 1;
  Int m = 0;
  Int max_points = kDefaultMaxPoints;
  std::string file;
  std::string kind = "sigma";
  std::vector<Int> coords;
  std::vector<Int> box;
  bool trace = false;
  Int elide = -1;
  VerifyParams vp;

  auto* seg = app.add_subcommand("segment", "materialize the initial segment I_n(m)");
  seg->add_option("n", n, "dimension")->required()->check(CLI::PositiveNumber);
  seg->add_option("m", m, "number of points")->required()->check(CLI::NonNegativeNumber);
  seg->add_option("--max-points", max_points, "materialization cap");

  auto* rk = app.add_subcommand("rank", "0-based position of a point in cube order");
  rk->add_option("coords", coords, "point coordinates")->required()->expected(-1);

  auto* urk = app.add_subcommand("unrank", "point at 0-based position m in cube order");
  urk->add_option("n", n, "dimension")->required()->check(CLI::PositiveNumber);
  urk->add_option("m", m, "position")->required()->check(CLI::NonNegativeNumber);

  auto* sg = app.add_subcommand("sigma", "extremal hyperplane-projection sum sigma_n(m)");
  sg->add_option("n", n, "dimension")->required()->check(CLI::PositiveNumber);
  sg->add_option("m", m, "set size")->required()->check(CLI::NonNegativeNumber);

  auto* lm = app.add_subcommand("lambda", "extremal axis-projection sum lambda_n(m)");
  lm->add_option("n", n, "dimension")->required()->check(CLI::PositiveNumber);
  lm->add_option("m", m, "set size")->required()->check(CLI::NonNegativeNumber);

  auto* pf = app.add_subcommand("profile", "projection profile of a point set");
  pf->add_option("file", file, "point-set file, or - for stdin")->required();
  pf->add_option("--kind", kind, "sigma or lambda")->capture_default_str();

  auto* mini = app.add_subcommand("minimise", "rearrange a set into the initial segment");
  mini->add_option("file", file, "point-set file, or - for stdin")->required();
  mini->add_flag("--trace", trace, "print every intermediate set");
  mini->add_option("--elide", elide, "omit point lists above this size in JSON traces");
  mini->add_option("--max-points", max_points, "materialization cap");

  auto* orc = app.add_subcommand("oracle", "exhaustive minimum over m-subsets of a box");
  orc->add_option("n", n, "dimension")->required()->check(CLI::PositiveNumber);
  orc->add_option("m", m, "set size")->required()->check(CLI::PositiveNumber);
  orc->add_option("--box", box, "box sides a,b,...")->required()->delimiter(',');
  orc->add_option("--kind", kind, "sigma or lambda")->capture_default_str();
  orc->add_option("--budget", vp.scan.budget, "candidate-subset budget")->capture_default_str();
  orc->add_option("--threads", vp.scan.threads, "worker threads")->capture_default_str();
  orc->add_option("--witness-cap", vp.scan.witness_cap, "max witnesses kept")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "run a law suite");
  ver->add_option("--suite", vp.suite, "sub|restate|idt|hz19|lw|stability|lambda|random")->required();
  ver->add_option("--n", vp.n, "dimension (or cap for sampled suites)")->capture_default_str();
  ver->add_option("--mmax", vp.mmax, "argument cap")->capture_default_str();
  ver->add_option("--smax", vp.smax, "slab-count / multiplier cap")->capture_default_str();
  ver->add_option("--mkmax", vp.mkmax, "slab-length cap")->capture_default_str();
  ver->add_option("--trials", vp.trials, "sampled trials")->capture_default_str();
  ver->add_option("--coordmax", vp.coordmax, "coordinate cap for random sets")->capture_default_str();
  ver->add_option("--seed", vp.seed, "RNG seed")->capture_default_str();
  ver->add_option("--budget", vp.scan.budget, "oracle budget")->capture_default_str();
  ver->add_option("--threads", vp.scan.threads, "oracle worker threads")->capture_default_str();

  // let global flags like --json appear after the verb
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (seg->parsed()) {
    const PointSet a = initial_segment(n, m, max_points);
    if (json)
      std::cout << to_json(a).dump() << '\n';
    else
      format_pointset(std::cout, a);
    return 0;
  }
  if (rk->parsed()) {
    std::cout << rank(coords) << '\n';
    return 0;
  }
  if (urk->parsed()) {
    const Point p = unrank(n, m);
    for (std::size_t j = 0; j < p.size(); ++j)
      std::cout << (j ? " " : "") << p[j];
    std::cout << '\n';
    return 0;
  }
  if (sg->parsed()) {
    std::cout << sigma_segment(n, m) << '\n';
    return 0;
  }
  if (lm->parsed()) {
    std::cout << lambda_segment(n, m) << '\n';
    return 0;
  }
  if (pf->parsed()) {
    const PointSet a = load_pointset(file);
    const ProfileKind k = parse_kind(kind);
    const ProjectionProfile prof =
        k == ProfileKind::hyperplane ? sigma_profile(a) : lambda_profile(a);
    if (json) {
      std::cout << to_json(a.dim, a.size(), prof).dump() << '\n';
    } else {
      std::cout << to_string(prof.kind) << " total " << prof.total << '\n';
      for (std::size_t j = 0; j < prof.per_axis.size(); ++j)
        std::cout << "axis " << j << ": " << prof.per_axis[j] << '\n';
    }
    return 0;
  }
  if (mini->parsed()) {
    const PointSet a = load_pointset(file);
    const RearrangeTrace tr = rearrange_to_segment(a, max_points);
    if (json) {
      std::cout << to_json(tr, elide).dump() << '\n';
    } else {
      for (const TraceStep& step : tr.steps) {
        std::cout << "# " << step.label << " size " << step.set.size()
                  << " sigma " << step.sigma << '\n';
        if (trace || &step == &tr.steps.back()) format_pointset(std::cout, step.set);
      }
    }
    return 0;
  }
  if (orc->parsed()) {
    const OracleResult res = brute_force_min(parse_kind(kind), n, m, box, vp.scan);
    if (json) {
      std::cout << to_json(res).dump() << '\n';
    } else {
      std::cout << "min " << res.min_value << " attained by "
                << res.minimiser_count << " subsets\n";
      for (const PointSet& w : res.witnesses) {
        std::cout << "witness:\n";
        format_pointset(std::cout, w);
      }
    }
    return 0;
  }
  return report_laws(run_suite(vp), json);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const projsum::budget_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
