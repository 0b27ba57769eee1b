#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <polykit/io.hpp>

#include "corpus.hpp"

using namespace polykit;
namespace fs = std::filesystem;

#ifndef POLYKIT_BIN
#error "POLYKIT_BIN must point at the CLI binary"
#endif
#ifndef POLYKIT_DATA
#error "POLYKIT_DATA must point at the data directory"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(POLYKIT_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) {
  return std::string(POLYKIT_DATA) + "/" + name;
}

fs::path tmp_file(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("cols/products/cb on the quadrangle") {
  RunResult r = run("cols " + data("p_c.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("3 column vector(s)") != std::string::npos);
  CHECK(r.out.find("(0,-1)") != std::string::npos);
  CHECK(r.out.find("(1,-1)") != std::string::npos);
  CHECK(r.out.find("(1,0)") != std::string::npos);

  r = run("products " + data("p_c.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("partial products: 1") != std::string::npos);
  CHECK(r.out.find("(0,-1) * (1,0) = (1,-1)") != std::string::npos);

  r = run("cb " + data("p_c.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("CB(P): 3 x 2") != std::string::npos);
}

TEST_CASE("machine-readable output is stable across runs") {
  RunResult a = run("--json cols " + data("p_c.json"));
  RunResult b = run("--json cols " + data("p_c.json"));
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  Json doc = Json::parse(a.out);
  CHECK(doc.at("command") == "cols");
  CHECK(doc.at("columns").size() == 3);
}

TEST_CASE("golden report for the quadrangle") {
  RunResult r = run("--json cols " + data("p_c.json"));
  std::ifstream in(std::string(POLYKIT_GOLDEN) + "/cols_p_c.json");
  REQUIRE(in.good());
  std::string expect((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
  CHECK(r.out == expect);
}

TEST_CASE("POLYKIT_SEED is honored from the environment") {
  std::string cmd = "POLYKIT_SEED=7 " + std::string(POLYKIT_BIN) +
                    " verify afemb " + data("p_d2.json") + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(out.find("pass") != std::string::npos);
}

TEST_CASE("double: emits 2Δ2 from 2Δ1 and round-trips") {
  fs::path out = fs::temp_directory_path() / "doubled.json";
  // the facet at x = 0 of [0,2] has form (1 | 0); locate its id first
  Polytope seg = load_polytope(data("seg2.json"));
  size_t left = 0;
  for (const Facet& f : seg.facets)
    if (f.a == Vec{Int(1)}) left = f.id;
  RunResult r = run("double " + data("seg2.json") + " --facet " +
                    std::to_string(left) + " --out " + out.string());
  CHECK(r.exit_code == 0);
  Polytope re = load_polytope(out.string());
  Polytope tri = corpus::delta2x2();
  CHECK(re.dim == 2);
  CHECK(re.vertices == tri.vertices);
  CHECK(re.lattice_points == tri.lattice_points);
  // emitted canonical coordinates re-parse to the identical polytope
  Json doc = emit_polytope(re);
  Polytope re2 = parse_polytope(doc);
  CHECK(re2.vertices == re.vertices);
  CHECK(re2.lattice_points == re.lattice_points);
  CHECK(re2.facets.size() == re.facets.size());
  for (size_t i = 0; i < re.facets.size(); ++i) {
    CHECK(re2.facets[i].a == re.facets[i].a);
    CHECK(re2.facets[i].b == re.facets[i].b);
  }
}

TEST_CASE("double: the non-balanced triangle warns about extra columns") {
  Polytope tri = load_polytope(data("growing_triangle.json"));
  ColumnTable t = column_vectors(tri);
  size_t base = t.columns[*t.index_of(Vec{Int(1), Int(0)})].base_facet;
  RunResult r = run("double " + data("growing_triangle.json") + " --facet " +
                    std::to_string(base));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("warning: extra columns") != std::string::npos);
}

TEST_CASE("spectrum: node files plus ledger") {
  fs::path dir = fs::temp_directory_path() / "polykit_spectrum_test";
  fs::remove_all(dir);
  RunResult r = run("spectrum " + data("p_c.json") + " --depth 4 --outdir " +
                    dir.string());
  CHECK(r.exit_code == 0);
  for (int i = 1; i <= 4; ++i)
    CHECK(fs::exists(dir / ("node_" + std::to_string(i) + ".json")));
  CHECK(fs::exists(dir / "ledger.json"));
  // node files re-parse; provenance present
  std::ifstream in(dir / "node_2.json");
  Json doc = Json::parse(in);
  CHECK(doc.contains("provenance"));
  CHECK(doc.at("provenance").contains("pivot"));
  Polytope node = parse_polytope(doc);
  CHECK(node.dim == 4);
}

TEST_CASE("exit codes") {
  SUBCASE("garbage input: 2") {
    fs::path p = tmp_file("garbage.json", "this is not json");
    CHECK(run("cols " + p.string()).exit_code == 2);
  }
  SUBCASE("floats rejected: 2") {
    fs::path p = tmp_file("floats.json",
                          R"({"dim": 1, "vertices": [[0.5], [1]]})");
    CHECK(run("cols " + p.string()).exit_code == 2);
  }
  SUBCASE("classify a segment: 2") {
    CHECK(run("classify " + data("seg2.json")).exit_code == 2);
  }
  SUBCASE("spectrum on a non-balanced seed: 3") {
    fs::path p = tmp_file("ess_tri.json",
                          R"({"dim": 2, "vertices": [[0,0],[2,0],[0,1]]})");
    CHECK(run("spectrum " + p.string() + " --depth 2").exit_code == 3);
  }
  SUBCASE("unknown verify check: 2") {
    CHECK(run("verify frobnicate " + data("p_c.json")).exit_code == 2);
  }
  SUBCASE("cb with empty Col: 3") {
    fs::path p = tmp_file(
        "nocol.json",
        R"({"dim": 2, "vertices": [[0,0],[2,1],[1,2],[-1,-1]]})");
    CHECK(run("cb " + p.string()).exit_code == 3);
  }
  SUBCASE("missing facet id: 2") {
    CHECK(run("double " + data("p_c.json")).exit_code == 2);
  }
}

TEST_CASE("verify subcommands: stated examples") {
  CHECK(run("verify comrel " + data("p_c.json") + " --ring poly:lambda,mu")
            .exit_code == 0);
  CHECK(run("verify nfiltun " + data("seg2.json") + " --ring int").exit_code ==
        0);
  CHECK(run("verify nfiltun " + data("seg2.json") + " --ring mod:2")
            .exit_code == 0);
  CHECK(run("verify matrix-model --class b --j 2 --ring mod:4").exit_code == 0);
  CHECK(run("verify welldef " + data("seg2.json")).exit_code == 0);
  CHECK(run("verify colbal " + data("p_c.json")).exit_code == 0);
  CHECK(run("verify afemb " + data("p_d2.json")).exit_code == 0);
  CHECK(run("verify trivcen-star " + data("p_c.json")).exit_code == 0);
  CHECK(run("verify pi " + data("p_c.json") + " --depth 1").exit_code == 0);
}

TEST_CASE("classify and equiv: stated examples") {
  RunResult r = run("classify " + data("pentagon_f.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("class f") != std::string::npos);
  r = run("classify " + data("p_d2.json"));
  CHECK(r.out.find("class d (3 column(s))") != std::string::npos);
  r = run("equiv " + data("unit_square.json") + " " + data("rect_3x5.json") +
          " --mode proj");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("yes") != std::string::npos);
  r = run("equiv " + data("trapezoid_b.json") + " " + data("trapezoid_b.json") +
          " --mode e");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("E-equivalent: yes") != std::string::npos);
}

TEST_CASE("degenerate vertex input warns and proceeds") {
  fs::path p = tmp_file(
      "degenerate.json",
      R"({"dim": 1, "vertices": [[0], [0], [1], [2]]})");
  RunResult r = run("cols " + p.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("warning: degenerate input") != std::string::npos);
  CHECK(r.out.find("2 column vector(s)") != std::string::npos);
}

TEST_CASE("cols with empty Col exits 0 with a note") {
  fs::path p = tmp_file("nocol2.json",
                        R"({"dim": 2, "vertices": [[0,0],[2,1],[1,2],[-1,-1]]})");
  RunResult r = run("cols " + p.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("Col(P) is empty") != std::string::npos);
}

TEST_CASE("parse_polytope rejects malformed documents") {
  CHECK_THROWS_AS(parse_polytope(Json::parse(R"({"vertices": [[0]]})")),
                  ParseError);
  CHECK_THROWS_AS(parse_polytope(Json::parse(R"({"dim": 1, "vertices": []})")),
                  ParseError);
  CHECK_THROWS_AS(
      parse_polytope(Json::parse(R"({"dim": 2, "vertices": [[0,0],[1]]})")),
      ParseError);
  CHECK_THROWS_AS(
      parse_polytope(Json::parse(R"({"dim": 1, "vertices": [[0],["x"]]})")),
      ParseError);
  CHECK_THROWS_AS(
      parse_polytope(Json::parse(
          R"({"dim": 1, "vertices": [[0],[2]], "facets": [{"a": [1]}]})")),
      ParseError);
  CHECK_THROWS_AS(parse_polytope(Json::parse(R"([1,2,3])")), ParseError);
}

TEST_CASE("user-supplied facets are verified") {
  // correct facets accepted
  fs::path good = tmp_file("facets_good.json", R"({
    "dim": 1, "vertices": [[0],[2]],
    "facets": [{"a":[1],"b":0},{"a":[-1],"b":-2}]})");
  CHECK(run("cols " + good.string()).exit_code == 0);
  // facets cutting off lattice points rejected
  fs::path bad = tmp_file("facets_bad.json", R"({
    "dim": 1, "vertices": [[0],[2]],
    "facets": [{"a":[1],"b":1},{"a":[-1],"b":-2}]})");
  CHECK(run("cols " + bad.string()).exit_code == 2);
}
