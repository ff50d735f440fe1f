#include "arrlevel/cli.hpp"

#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = arrlevel::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return std::string(ARRLEVEL_CORPUS_DIR) + "/" + name; }
std::string data(const std::string& name) { return std::string(ARRLEVEL_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("chi") {
  const auto r = run({"chi", corpus("braid3.arr")});
  CHECK(r.code == 0);
  CHECK(r.out == "chi t^3 - 3*t^2 + 2*t\nr 6\nb 0\n");
  const auto p = run({"chi", corpus("u24_minus_top.poset")});
  CHECK(p.code == 0);
  CHECK(p.out == "chi t - 4\nr 5\nb 3\n");
}

TEST_CASE("levels") {
  const auto r = run({"levels", corpus("shi3.arr"), "--method", "both"});
  CHECK(r.code == 0);
  CHECK(r.out.find("enumerate 0 4 6 6\n") != std::string::npos);
  CHECK(r.out.find("formula 0 4 6 6\n") != std::string::npos);
  CHECK(r.out.find("MATCH\n") != std::string::npos);
  CHECK(r.out.rfind("# ambient-indexed", 0) == 0);

  const auto p = run({"levels", corpus("pi3.poset")});
  CHECK(p.code == 0);
  CHECK(p.out.rfind("# rank-indexed", 0) == 0);
  CHECK(p.out.find("formula 0 0 6\n") != std::string::npos);
  CHECK(run({"levels", corpus("pi3.poset"), "--method", "enumerate"}).code == 2);
  CHECK(run({"levels", corpus("shi3.arr"), "--method", "guess"}).code == 2);
}

TEST_CASE("regions") {
  const auto e = run({"regions", corpus("empty2.arr")});
  CHECK(e.code == 0);
  CHECK(e.out == "R  level 2 flat 0 witness 0 0\n");
  const auto s = run({"regions", corpus("shi2.arr")});
  CHECK(s.code == 0);
  CHECK(s.out.find("R +- level 1") != std::string::npos);
  const auto plot = run({"regions", corpus("triangle.arr"), "--plot-data"});
  CHECK(plot.code == 0);
  CHECK(plot.out.find("\nbox ") != std::string::npos);
  CHECK(plot.out.find("\nsegment 2 ") != std::string::npos);
  CHECK(plot.out.find("\npoint ") != std::string::npos);
  CHECK(run({"regions", corpus("braid3.arr"), "--plot-data"}).code == 2);
  CHECK(run({"regions", corpus("pi3.poset")}).code == 2);
}

TEST_CASE("cone and centralize") {
  const auto c = run({"cone", corpus("u24_minus_top.poset")});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("a0 ", 0) == 0);
  CHECK(c.out.find("elements 7\n") != std::string::npos);
  const auto a = run({"cone", corpus("parallel2.arr")});
  CHECK(a.code == 0);
  CHECK(a.out.find("elements 5\n") != std::string::npos);

  const auto z = run({"centralize", corpus("shi3.arr")});
  CHECK(z.code == 0);
  CHECK(z.out == "dim 3\nh 1 -1 0 = 0\nh 1 0 -1 = 0\nh 0 1 -1 = 0\n");
  const auto zp = run({"centralize", corpus("u24_minus_top.poset")});
  CHECK(zp.code == 0);
  CHECK(zp.out.find("elements 2\n") != std::string::npos);
}

TEST_CASE("family") {
  const auto f = run({"family", "catalan", "2"});
  CHECK(f.code == 0);
  CHECK(f.out == "dim 2\nh 1 -1 = -1\nh 1 -1 = 0\nh 1 -1 = 1\n");
  const auto l = run({"family", "shi", "3", "--levels"});
  CHECK(l.code == 0);
  CHECK(l.out.find("levels 0 4 6 6\n") != std::string::npos);
  CHECK(l.out.find("chi t^3 - 6*t^2 + 9*t\n") != std::string::npos);
  const auto t = run({"family", "braid", "--max-n", "3"});
  CHECK(t.code == 0);
  CHECK(t.out.find("n 3 levels 0 0 0 6 chi t^3 - 3*t^2 + 2*t\n") != std::string::npos);
  CHECK(run({"family", "linial", "3"}).code == 2);
  CHECK(run({"family", "shi"}).code == 2);
}

TEST_CASE("verify") {
  const auto v = run({"verify", corpus("shi3.arr")});
  CHECK(v.code == 0);
  CHECK(v.out.find("FAIL") == std::string::npos);
  CHECK(v.out.find("all checks passed\n") != std::string::npos);
  CHECK(run({"verify", corpus("u35_minus_atom.poset")}).code == 0);
  CHECK(run({"verify", data("chain3.poset")}).code == 1);
  const auto fz = run({"verify", "--fuzz", "5", "--seed", "3"});
  CHECK(fz.code == 0);
  CHECK(run({"verify", "--fuzz", "5", "--seed", "3"}).out == fz.out);
}

TEST_CASE("malformed input and usage errors exit 2 with line numbers") {
  const auto bad = run({"chi", data("bad_line.arr")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 3") != std::string::npos);
  CHECK(run({"chi", data("bad_atom.poset")}).code == 2);
  CHECK(run({"cone", data("chain3.poset")}).code == 2);
  CHECK(run({"chi", data("missing.arr")}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify"}).code == 2);
}

TEST_CASE("output is deterministic") {
  for (const auto& file : {"catalan3.arr", "generic3.arr", "nonuniform3.arr"}) {
    const auto a = run({"regions", corpus(file)});
    const auto b = run({"regions", corpus(file)});
    CHECK(a.out == b.out);
    CHECK(run({"verify", corpus(file)}).out == run({"verify", corpus(file)}).out);
  }
}
