#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "toricap/cli.hpp"

using namespace toricap;
using namespace toricap::testing;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string path(const std::string& name) { return (corpus_dir() / (name + ".poly")).string(); }
std::string domain_path(const std::string& name) { return (corpus_dir() / "domains" / (name + ".poly")).string(); }

std::vector<std::vector<std::string>> rows(const std::string& tsv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(tsv);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream fields(line);
    for (std::string c; std::getline(fields, c, '\t');) cells.push_back(c);
    out.push_back(cells);
  }
  return out;
}

class TempFile {
 public:
  explicit TempFile(const std::string& body) {
    path_ = std::filesystem::temp_directory_path() /
            ("toricap_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".poly");
    std::ofstream(path_) << body;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(ParsePolygon, Files) {
  TempFile tri("0 0\n1 0\n0 1");
  EXPECT_EQ(parse_polygon(std::filesystem::path(tri.str())), poly({{0, 0}, {1, 0}, {0, 1}}));
  TempFile rational("# half-integral\n3/2 0\n0 1\n0 0\n");
  EXPECT_EQ(parse_polygon(std::filesystem::path(rational.str())).vertex(1), (Point{q(3, 2), 0}));
  TempFile collinear("0 0\n1 0\n2 0\n0 1\n");
  try {
    parse_polygon(std::filesystem::path(collinear.str()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConvex);
  }
}

TEST(Cli, Capacities) {
  auto r = run({"capacities", path("triangle"), "--k-max", "6"});
  EXPECT_EQ(r.code, 0);
  auto t = rows(r.out);
  ASSERT_EQ(t.size(), 8u);
  EXPECT_EQ(t[0], (std::vector<std::string>{"k", "calg"}));
  std::vector<std::string> values;
  for (std::size_t i = 1; i < t.size(); ++i) values.push_back(t[i][1]);
  EXPECT_EQ(values, (std::vector<std::string>{"0", "1", "1", "2", "2", "2", "3"}));
}

TEST(Cli, DecimalColumn) {
  auto r = run({"capacities", path("hirzebruch_1"), "--k-max", "2", "--decimal"});
  EXPECT_EQ(r.code, 0);
  auto t = rows(r.out);
  EXPECT_EQ(t[0], (std::vector<std::string>{"k", "calg", "calg_decimal"}));
  EXPECT_EQ(t[2], (std::vector<std::string>{"1", "2/3", "0.666667"}));
}

TEST(Cli, Embed) {
  auto r = run({"embed", domain_path("ball_11"), path("square")});
  EXPECT_EQ(r.code, 1);
  auto t = rows(r.out);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1], (std::vector<std::string>{"OBSTRUCTED", "1", "11/10", "1", "100"}));

  r = run({"embed", domain_path("triangle_1x2"), path("rect_1x2"), "--k-max", "50"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(rows(r.out)[1], (std::vector<std::string>{"COMPATIBLE_UP_TO_K", "-", "-", "-", "50"}));
}

TEST(Cli, Width) {
  auto r = run({"width", path("rect_2x3")});
  EXPECT_EQ(r.code, 0);
  auto t = rows(r.out);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1], (std::vector<std::string>{"2", "1", "true", "100", "2", "(1,0)", "true"}));
  r = run({"width", path("rect_2x3"), "--xi", domain_path("triangle_1x2"), "--k-max", "30"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(rows(r.out)[1].back(), "-");
}

TEST(Cli, LatticeWidthResolveTransform) {
  auto r = run({"lattice-width", path("triangle_2")});
  EXPECT_EQ(rows(r.out)[1], (std::vector<std::string>{"2", "(1,0)"}));

  r = run({"resolve", path("weighted_112")});
  EXPECT_EQ(r.code, 0);
  auto t = rows(r.out);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[3], (std::vector<std::string>{"2", "(-1,0)", "-2", "inserted"}));

  r = run({"transform-ip", path("hirzebruch_1"), "--divisor", "0,1,0,1"});
  EXPECT_EQ(r.code, 0);
  t = rows(r.out);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[1][1], "0,1,0,1");
  EXPECT_EQ(t[2][1], "0,0,0,1");
  EXPECT_EQ(t[1][2], t[2][2]);
}

TEST(Cli, VerifyTables) {
  auto r = run({"verify-calg", path("square"), "--k-max", "6", "--box", "6"});
  EXPECT_EQ(r.code, 0);
  auto t = rows(r.out);
  ASSERT_EQ(t.size(), 8u);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_EQ(t[i].back(), "true");

  r = run({"verify-sw", path("hirzebruch_2"), "--k-max", "5"});
  EXPECT_EQ(r.code, 0);
  t = rows(r.out);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_EQ(t[i][3], "true");
  EXPECT_NE(r.out.find("# certificates\ttrue"), std::string::npos);
}

TEST(Cli, Corpus) {
  auto r = run({"corpus", corpus_dir().string(), "--k-max", "20"});
  EXPECT_EQ(r.code, 0);
  auto t = rows(r.out);
  ASSERT_EQ(t.size(), 13u);
  for (std::size_t i = 1; i < t.size(); ++i) {
    EXPECT_EQ(t[i][1], "ok") << t[i][0];
    EXPECT_EQ(t[i].back(), "true") << t[i][0];
  }
}

TEST(Cli, Ech) {
  auto r = run({"ech", domain_path("triangle_1x2"), "--k-max", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# ECH_CONCAVE"), std::string::npos);
  auto t = rows(r.out);
  EXPECT_EQ(t[3][1], "2");
  r = run({"ech", path("square"), "--k-max", "2"});
  EXPECT_NE(r.out.find("# ECH_CONVEX"), std::string::npos);
  EXPECT_EQ(rows(r.out)[3][1], "2");
  r = run({"ech", path("hexagon")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NotDomainPolygon"), std::string::npos);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"capacities", "/nonexistent.poly"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  TempFile bad("0 0\n1 0\n1/x 1\n");
  auto r = run({"capacities", bad.str()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run({"embed", domain_path("unit_ball"), path("square"), "--k-max", "abc"}).code, 2);
  EXPECT_EQ(run({"verify-calg", path("triangle"), "--k-max", "10", "--box", "2"}).code, 2);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args = {"verify-calg", path("hexagon"), "--k-max", "8", "--box", "5"};
  auto a = run(args);
  auto with_threads = args;
  with_threads.insert(with_threads.end(), {"--threads", "3"});
  auto b = run(with_threads);
  auto c = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}
