#pragma once

// Command-line front end. run() returns the process exit code:
// 0 success, 1 embedding obstructed, 2 bad input or failed computation.

#include <algorithm>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toricap/capacities.hpp"
#include "toricap/error.hpp"
#include "toricap/lattice.hpp"
#include "toricap/oracle.hpp"
#include "toricap/polygon_io.hpp"
#include "toricap/toric.hpp"

namespace toricap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitObstructed = 1;
inline constexpr int kExitInput = 2;

struct Options {
  std::size_t k_max = 100;
  int box = 6;
  unsigned threads = 1;
  bool decimal = false;
};

namespace detail {

// Exact value, plus a rounded copy when --decimal is set.
inline std::string cell(const Rational& r, const Options& o) {
  return o.decimal ? to_string(r) + "\t" + to_decimal(r) : to_string(r);
}

inline std::string head(const std::string& name, const Options& o) {
  return o.decimal ? name + "\t" + name + "_decimal" : name;
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline std::string join(const std::vector<LatticeVector>& rays) {
  std::string s;
  for (const auto& r : rays) s += (s.empty() ? "" : " ") + to_string(r);
  return s;
}

inline TorusDivisor parse_divisor(const std::string& text) {
  TorusDivisor d;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    d.coefficients.push_back(parse_rational(tok));
  }
  return d;
}

inline void capacities(std::ostream& out, const MomentPolygon& p, const Options& o) {
  CalgTable t = calg_table(p, o.k_max);
  out << "k\t" << head("calg", o) << "\n";
  for (std::size_t k = 0; k <= o.k_max; ++k) out << k << "\t" << cell(t.values[k], o) << "\n";
}

inline void ech(std::ostream& out, const std::vector<Point>& pts, const Options& o) {
  std::vector<Rational> values;
  Provenance prov{};
  std::optional<ConcaveDomain> concave;
  try {
    concave = ConcaveDomain::from_vertices(pts);
  } catch (const Error&) {
  }
  if (concave) {
    prov = Provenance::EchConcave;
    values = ech_concave_sequence(*concave, o.k_max);
  } else {
    MomentPolygon p = MomentPolygon::from_vertices(pts);
    require_domain_polygon(p);
    prov = Provenance::EchConvex;
    values = calg_table(p, o.k_max).values;
  }
  out << "# " << to_string(prov) << "\n";
  out << "k\t" << head("ech", o) << "\n";
  for (std::size_t k = 0; k <= o.k_max; ++k) out << k << "\t" << cell(values[k], o) << "\n";
}

inline int embed(std::ostream& out, const ConcaveDomain& delta, const MomentPolygon& omega, const Options& o) {
  EmbeddingVerdict v = embedding_verdict(delta, omega, o.k_max);
  out << "status\twitness_k\t" << head("ech", o) << "\t" << head("calg", o) << "\thorizon\n";
  out << to_string(v.status) << "\t";
  if (v.witness) {
    out << *v.witness << "\t" << cell(v.ech_value, o) << "\t" << cell(v.alg_value, o);
  } else {
    out << "-\t-" << (o.decimal ? "\t-" : "") << "\t-" << (o.decimal ? "\t-" : "");
  }
  out << "\t" << v.horizon << "\n";
  return v.status == VerdictStatus::Obstructed ? kExitObstructed : kExitOk;
}

inline void width(std::ostream& out, const MomentPolygon& p, const std::optional<ConcaveDomain>& xi,
                  const Options& o) {
  LatticeWidth lw = lattice_width(p);
  XiWidth w = xi ? xi_width(p, *xi, o.k_max) : gromov_width(p, o.k_max);
  out << head("estimate", o) << "\targmin_k\tstable\thorizon\tlattice_width\tdirection\tbound_holds\n";
  out << cell(w.estimate, o) << "\t" << w.argmin << "\t" << yes_no(w.stable) << "\t" << w.horizon << "\t"
      << to_string(lw.width) << "\t" << to_string(lw.direction) << "\t"
      << (xi ? std::string("-") : yes_no(w.estimate <= lw.width)) << "\n";
}

inline void lattice_width_cmd(std::ostream& out, const MomentPolygon& p) {
  LatticeWidth lw = lattice_width(p);
  out << "width\tdirection\n" << to_string(lw.width) << "\t" << to_string(lw.direction) << "\n";
}

inline void transform_ip(std::ostream& out, const MomentPolygon& p, const std::string& divisor) {
  ToricSurface y = build_surface(p);
  TorusDivisor d = parse_divisor(divisor);
  std::vector<TorusDivisor> steps = iterate_ip(y, d);
  TorusDivisor a = associated_divisor(p);
  out << "# rays " << join(y.rays()) << "\n";
  out << "step\tdivisor\th0\tindex\tarea_pairing\tnef\n";
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const auto& e = steps[s];
    out << s << "\t" << to_string(e) << "\t" << to_string(h0(y, e)) << "\t" << to_string(index(y, e)) << "\t"
        << to_string(intersect(y, e, a)) << "\t" << yes_no(is_nef(y, e)) << "\n";
  }
}

inline void resolve_cmd(std::ostream& out, const MomentPolygon& p) {
  ToricSurface y = build_surface(p);
  ToricSurface r = resolve(y);
  out << "i\tray\tself_intersection\torigin\n";
  for (std::size_t i = 0; i < r.size(); ++i) {
    bool original = std::find(y.rays().begin(), y.rays().end(), r.ray(i)) != y.rays().end();
    out << i << "\t" << to_string(r.ray(i)) << "\t" << to_string(r.intersection(i, i)) << "\t"
        << (original ? "original" : "inserted") << "\n";
  }
}

inline void verify_calg(std::ostream& out, const MomentPolygon& p, const Options& o) {
  CalgTable fast = calg_table(p, o.k_max);
  OracleTable slow = brute_calg_table(p, o.k_max, o.box, o.threads);
  out << "k\t" << head("calg", o) << "\t" << head("brute", o) << "\tequal\n";
  for (std::size_t k = 0; k <= o.k_max; ++k) {
    out << k << "\t" << cell(fast.values[k], o) << "\t" << cell(slow.values[k], o) << "\t"
        << yes_no(fast.values[k] == slow.values[k]) << "\n";
  }
}

inline void verify_sw(std::ostream& out, const MomentPolygon& p, const Options& o) {
  SwNefReport r = sw_equals_nef(p, o.k_max, o.box, o.threads);
  out << "k\t" << head("sw", o) << "\t" << head("calg", o) << "\tequal\tclasses\n";
  for (const auto& row : r.rows) {
    out << row.k << "\t" << cell(row.sw, o) << "\t" << cell(row.calg, o) << "\t" << yes_no(row.equal) << "\t"
        << row.classes << "\n";
  }
  out << "# certificates\t" << yes_no(r.certificates_ok) << "\n";
}

inline void corpus(std::ostream& out, const std::filesystem::path& dir, const Options& o) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".poly") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  out << "file\tstatus\t" << head("estimate", o) << "\targmin_k\tstable\tlattice_width\tbound_holds\n";
  for (const auto& f : files) {
    out << f.filename().string() << "\t";
    try {
      WidthBound w = width_bound_check(parse_polygon(f), o.k_max);
      out << "ok\t" << cell(w.gromov.estimate, o) << "\t" << w.gromov.argmin << "\t" << yes_no(w.gromov.stable)
          << "\t" << to_string(w.lattice.width) << "\t" << yes_no(w.holds) << "\n";
    } catch (const Error& e) {
      out << to_string(e.code()) << "\t-" << (o.decimal ? "\t-" : "") << "\t-\t-\t-\t-\n";
    }
  }
}

}  // namespace detail

// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebraic and ECH capacities of toric surfaces and domains", "toricap"};
  app.require_subcommand(1);
  Options o;
  std::string first, second, xi, divisor;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--k-max", o.k_max, "truncation horizon")->capture_default_str();
    sub->add_option("--box", o.box, "oracle search box")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", o.threads, "worker threads for oracle scans")->check(CLI::PositiveNumber);
    sub->add_flag("--decimal", o.decimal, "add rounded decimal columns");
  };
  auto one_file = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("polygon", first, "polygon file")->required();
    common(sub);
    return sub;
  };

  CLI::App* cap = one_file("capacities", "algebraic capacities c^alg_k");
  CLI::App* ech = one_file("ech", "ECH capacities of a concave or convex domain");
  CLI::App* embed = app.add_subcommand("embed", "concave domain into toric surface");
  embed->add_option("delta", first, "concave domain file")->required();
  embed->add_option("omega", second, "target polygon file")->required();
  common(embed);
  CLI::App* width = one_file("width", "Gromov or Xi-width estimate and lattice-width bound");
  width->add_option("--xi", xi, "concave model domain file");
  CLI::App* lw = one_file("lattice-width", "lattice width and direction");
  CLI::App* ip = one_file("transform-ip", "iterate the IP transform on a divisor");
  ip->add_option("--divisor", divisor, "comma-separated coefficients in ray order")->required();
  CLI::App* res = one_file("resolve", "minimal resolution of the toric surface");
  CLI::App* vc = one_file("verify-calg", "pruned enumeration against exhaustive scan");
  CLI::App* vs = one_file("verify-sw", "Seiberg-Witten infimum against nef minimum");
  CLI::App* cor = app.add_subcommand("corpus", "width survey over a directory of .poly files");
  cor->add_option("directory", first, "directory")->required()->check(CLI::ExistingDirectory);
  common(cor);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  std::ostringstream buf;
  int code = kExitOk;
  try {
    if (*cap) {
      detail::capacities(buf, parse_polygon(first), o);
    } else if (*ech) {
      detail::ech(buf, read_points(first), o);
    } else if (*embed) {
      code = detail::embed(buf, parse_concave(first), parse_polygon(second), o);
    } else if (*width) {
      std::optional<ConcaveDomain> dom;
      if (!xi.empty()) dom = parse_concave(xi);
      detail::width(buf, parse_polygon(first), dom, o);
    } else if (*lw) {
      detail::lattice_width_cmd(buf, parse_polygon(first));
    } else if (*ip) {
      detail::transform_ip(buf, parse_polygon(first), divisor);
    } else if (*res) {
      detail::resolve_cmd(buf, parse_polygon(first));
    } else if (*vc) {
      detail::verify_calg(buf, parse_polygon(first), o);
    } else if (*vs) {
      detail::verify_sw(buf, parse_polygon(first), o);
    } else if (*cor) {
      detail::corpus(buf, first, o);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  out << buf.str();
  return code;
}

}  // namespace toricap::cli
