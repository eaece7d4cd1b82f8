#pragma once

// Polygon text format: one vertex per line as "x y", each coordinate an
// integer or n/d; '#' starts a comment; blank lines are ignored.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "toricap/capacities.hpp"
#include "toricap/error.hpp"
#include "toricap/lattice.hpp"
#include "toricap/rational.hpp"

namespace toricap {

inline std::vector<Point> parse_points(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError(lineno, "expected two coordinates, found " + std::to_string(tok.size()));
    try {
      pts.push_back({parse_rational(tok[0]), parse_rational(tok[1])});
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return pts;
}

inline std::vector<Point> read_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return parse_points(in);
}

inline MomentPolygon parse_polygon(std::istream& in) { return MomentPolygon::from_vertices(parse_points(in)); }

inline MomentPolygon parse_polygon(const std::filesystem::path& path) {
  return MomentPolygon::from_vertices(read_points(path));
}

inline ConcaveDomain parse_concave(const std::filesystem::path& path) {
  return ConcaveDomain::from_vertices(read_points(path));
}

inline std::string format_points(const std::vector<Point>& pts) {
  std::string out;
  for (const auto& p : pts) out += to_string(p.x) + " " + to_string(p.y) + "\n";
  return out;
}

}  // namespace toricap
