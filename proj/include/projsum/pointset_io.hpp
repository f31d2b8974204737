#pragma once

// Text and JSON serialization: the shared point-set text format plus JSON
// reports for profiles, traces, oracle results, and law reports.

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "projsum/oracle.hpp"
#include "projsum/point.hpp"
#include "projsum/projections.hpp"
#include "projsum/rearrange.hpp"

namespace projsum {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// One point per line, base-10 coordinates separated by single spaces;
// blank lines and lines starting with '#' are ignored; the dimension is
// inferred from the first data line. Duplicates, ragged rows, non-integer
// tokens and negative values are errors with line numbers.
inline PointSet parse_pointset(std::istream& in) {
  std::vector<Point> pts;
  std::vector<int> origin_line;
  int dim = -1;
  int lineno = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream row(line);
    Point p;
    std::string token;
    while (row >> token) {
      std::size_t used = 0;
      Int value = 0;
      try {
        value = std::stoll(token, &used);
      } catch (const std::exception&) {
        throw ParseError(lineno, "non-integer token '" + token + "'");
      }
      if (used != token.size())
        throw ParseError(lineno, "non-integer token '" + token + "'");
      if (value < 0)
        throw ParseError(lineno, "negative coordinate " + token);
      p.push_back(value);
    }
    if (dim < 0) {
      dim = static_cast<int>(p.size());
      if (dim < 1) throw ParseError(lineno, "empty point");
    } else if (static_cast<int>(p.size()) != dim) {
      throw ParseError(lineno, "expected " + std::to_string(dim) +
                                   " coordinates, got " + std::to_string(p.size()));
    }
    pts.push_back(std::move(p));
    origin_line.push_back(lineno);
  }
  if (dim < 0) throw ParseError(lineno, "no points in input");
  // report the duplicate at its own line rather than via PointSet::make
  {
    std::vector<std::pair<Point, int>> seen;
    seen.reserve(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) seen.emplace_back(pts[k], origin_line[k]);
    std::sort(seen.begin(), seen.end());
    for (std::size_t k = 1; k < seen.size(); ++k)
      if (seen[k].first == seen[k - 1].first)
        throw ParseError(std::max(seen[k].second, seen[k - 1].second),
                         "duplicate point");
  }
  return PointSet::make(dim, std::move(pts));
}

inline void format_pointset(std::ostream& out, const PointSet& a) {
  for (const Point& p : a.points) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out << ' ';
      out << p[j];
    }
    out << '\n';
  }
}

inline std::string format_pointset(const PointSet& a) {
  std::ostringstream out;
  format_pointset(out, a);
  return out.str();
}

inline nlohmann::json to_json(const PointSet& a) {
  nlohmann::json pts = nlohmann::json::array();
  for (const Point& p : a.points) pts.push_back(p);
  return pts;
}

inline nlohmann::json to_json(int n, Int size, const ProjectionProfile& prof) {
  return nlohmann::json{{"kind", to_string(prof.kind)},
                        {"n", n},
                        {"size", size},
                        {"per_axis", prof.per_axis},
                        {"total", prof.total}};
}

// Points are elided above the threshold; a negative threshold keeps all.
inline nlohmann::json to_json(const RearrangeTrace& trace, Int elide_above = -1) {
  nlohmann::json steps = nlohmann::json::array();
  for (const TraceStep& step : trace.steps) {
    nlohmann::json entry{{"label", step.label},
                         {"size", step.set.size()},
                         {"sigma", step.sigma}};
    if (elide_above < 0 || step.set.size() <= elide_above)
      entry["points"] = to_json(step.set);
    steps.push_back(std::move(entry));
  }
  return steps;
}

inline nlohmann::json to_json(const OracleResult& res) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const PointSet& w : res.witnesses) witnesses.push_back(to_json(w));
  return nlohmann::json{{"kind", to_string(res.kind)},
                        {"n", res.n},
                        {"m", res.m},
                        {"box", res.box},
                        {"min_value", res.min_value},
                        {"minimiser_count", res.minimiser_count},
                        {"witnesses", std::move(witnesses)}};
}

inline nlohmann::json to_json(const LawReport& report) {
  return nlohmann::json{{"law", report.law},
                        {"domain", report.domain},
                        {"cases_checked", report.cases_checked},
                        {"violations", report.violations},
                        {"ok", report.ok()}};
}

}  // namespace projsum
