#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "stabaut/cli.hpp"
#include "stabaut/errors.hpp"
#include "stabaut/kr_embed.hpp"
#include "stabaut/perm_lab.hpp"
#include "stabaut/serialization.hpp"
#include "support.hpp"

using namespace stabaut;
using nlohmann::json;
using support::flip;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

/// A scratch directory removed at scope exit.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("stabaut-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string grid_cycle(std::size_t n, const std::vector<GridPoint>& points) {
  std::string s = "(";
  for (std::size_t i = 0; i < points.size(); ++i)
    s += (i ? " " : "") + std::to_string(grid_index(n, points[i]) + 1);
  return s + ")";
}

}  // namespace

TEST_CASE("automorphism files round-trip") {
  const std::string text = save_automorphism(flip());
  CHECK(text.back() == '\n');
  const json j = json::parse(text);
  CHECK(j["version"] == 1);
  CHECK(j["n"] == 2);
  CHECK(j["tables"] == json::parse("[[1,0]]"));
  CHECK(equals(load_automorphism(text), flip()));
  CHECK(save_automorphism(load_automorphism(text)) == text);
  // Keys appear in sorted order.
  CHECK(text.find("\"inverse\"") < text.find("\"n\""));
  CHECK(text.find("\"period\"") < text.find("\"radius\""));

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Automorphism a = support::sample_automorphism(2 + trial % 2, rng);
    const std::string s = save_automorphism(a);
    const Automorphism b = load_automorphism(s);
    CHECK(equals(a, b));
    CHECK(save_automorphism(b) == s);
  }

  // The embedded flip re-saves byte for byte.
  const Automorphism e = embed_automorphism(flip(), find_marker_scheme(5, 2, 2));
  const std::string es = save_automorphism(e);
  CHECK(save_automorphism(load_automorphism(es)) == es);

  // A code without a stored inverse is paired by search.
  const std::string forward_only = save_code(shift_power(2, 1).forward());
  CHECK_FALSE(load_automorphism_file(forward_only).inverse.has_value());
  CHECK(equals(load_automorphism(forward_only), shift_power(2, 1)));
}

TEST_CASE("file validation names the locus") {
  CHECK_THROWS_WITH_AS(
      load_automorphism_file(R"({"n":2,"period":1,"radius":0,"tables":[[1,2]],"version":1})"),
      doctest::Contains("tables[0][1]"), ValidationError);
  CHECK_THROWS_WITH_AS(
      load_automorphism_file(R"({"n":2,"period":1,"radius":1,"tables":[[0,1]],"version":1})"),
      doctest::Contains("tables[0]"), ValidationError);
  CHECK_THROWS_WITH_AS(
      load_automorphism_file(
          R"({"inverse":{"period":1,"radius":0,"tables":[[0,5]]},"n":2,"period":1,"radius":0,"tables":[[1,0]],"version":1})"),
      doctest::Contains("inverse.tables[0][1]"), ValidationError);
  CHECK_THROWS_AS(load_automorphism_file("not json"), ValidationError);
  CHECK_THROWS_AS(load_automorphism_file(R"({"n":2,"period":1,"radius":0,"tables":[[1,0]],"version":7})"),
                  ValidationError);
  CHECK_THROWS_AS(load_automorphism_file(R"({"n":2,"period":1,"radius":0,"tables":[[1.5,0]],"version":1})"),
                  ValidationError);
  // A stored inverse that is not one.
  CHECK_THROWS_AS(
      load_automorphism(
          R"({"inverse":{"period":1,"radius":0,"tables":[[0,1]]},"n":2,"period":1,"radius":0,"tables":[[1,0]],"version":1})"),
      ValidationError);
  // No inverse exists: x_z XOR x_{z+1}.
  CHECK_THROWS_AS(
      load_automorphism(R"({"n":2,"period":1,"radius":1,"tables":[[0,1,1,0,0,1,1,0]],"version":1})", 2),
      ValidationError);
}

TEST_CASE("marker scheme files round-trip") {
  const MarkerScheme s = find_marker_scheme(5, 2, 2);
  const std::string text = save_marker_scheme(s);
  CHECK(load_marker_scheme(text) == s);
  CHECK(save_marker_scheme(load_marker_scheme(text)) == text);
  const json j = json::parse(text);
  CHECK(j["data_letters"] == json::parse("[0,1,2,3]"));
  CHECK(j["gap"] == 2);
  CHECK_THROWS_AS(load_marker_scheme("{}"), ValidationError);
}

TEST_CASE("invariants and orbits commands") {
  const Result r = run_cli({"invariants", "2", "6"});
  CHECK(r.code == cli::kExitOk);
  CHECK(contains(r.out, "distinguishable (omega 1 vs 2)"));
  CHECK(contains(r.out, "[criterion: abelianization-rank]"));

  const Result iso = run_cli({"--json", "invariants", "2", "4"});
  CHECK(iso.code == 0);
  const json j = json::parse(iso.out);
  CHECK(j["stabilized"]["outcome"] == "isomorphic");
  CHECK(j["exit_code"] == 0);

  const Result o = run_cli({"orbits", "3", "3"});
  CHECK(o.code == 0);
  CHECK(contains(o.out, "8 orbits of least period 3"));
  CHECK(contains(o.out, "moebius-orbit-count"));

  const Result sl = run_cli({"sl2z4"});
  CHECK(sl.code == 0);
  CHECK(contains(sl.out, "order 48"));
  CHECK(contains(sl.out, "commutator subgroup order 12"));

  CHECK(run_cli({"invariants", "1", "6"}).code == cli::kExitUsage);
  CHECK(run_cli({"no-such-command"}).code == cli::kExitUsage);
  CHECK(run_cli({}).code == cli::kExitUsage);
}

TEST_CASE("automorphism commands") {
  TempDir dir;
  const std::string flip_file = dir.file("flip.json");
  const std::string shift_file = dir.file("shift.json");
  write_file(flip_file, save_automorphism(flip()));
  write_file(shift_file, save_automorphism(shift_power(2, 1)));

  const Result d = run_cli({"dimrep", flip_file});
  CHECK(d.code == 0);
  CHECK(contains(d.out, "ray count 1 at level 0"));
  CHECK(contains(d.out, "inert: true"));
  CHECK(contains(d.out, "ray-count-multiplier"));
  const Result ds = run_cli({"--json", "dimrep", shift_file});
  CHECK(json::parse(ds.out)["exponents"] == json::parse("[1]"));
  CHECK(json::parse(ds.out)["inert"] == false);

  const Result v = run_cli({"verify-commutator", "3", "0", "2"});
  CHECK(v.code == 0);
  CHECK(contains(v.out, "verified"));
  CHECK(run_cli({"verify-commutator", "3", "1", "1"}).code == cli::kExitUsage);

  const std::string root_file = dir.file("root.json");
  const Result rt = run_cli({"root", flip_file, "3", "--out", root_file});
  CHECK(rt.code == 0);
  const Automorphism root = load_automorphism(read_file(root_file));
  CHECK(equals(compose(root, compose(root, root)).forward(), flip().forward()));
  CHECK(run_cli({"root", shift_file, "2"}).code == cli::kExitUsage);

  const std::string emb_file = dir.file("embedded.json");
  const std::string scheme_file = dir.file("scheme.json");
  const Result e = run_cli({"embed", flip_file, "--target", "5", "--gap", "2", "--out", emb_file,
                            "--scheme-out", scheme_file});
  CHECK(e.code == 0);
  CHECK(contains(e.out, "inert: true"));
  CHECK(equals(load_automorphism(read_file(emb_file)),
               embed_automorphism(flip(), find_marker_scheme(5, 2, 2))));
  CHECK(load_marker_scheme(read_file(scheme_file)) == find_marker_scheme(5, 2, 2));
  CHECK(run_cli({"embed", flip_file, "--target", "4", "--gap", "2"}).code == cli::kExitUsage);

  const Result en = run_cli({"--json", "enumerate", "2", "0", "1"});
  CHECK(en.code == 0);
  CHECK(json::parse(en.out)["count"] == 2);

  // Malformed file: exit 1 with the locus.
  const std::string bad = dir.file("bad.json");
  write_file(bad, R"({"n":2,"period":1,"radius":0,"tables":[[1,2]],"version":1})");
  const Result b = run_cli({"dimrep", bad});
  CHECK(b.code == cli::kExitUsage);
  CHECK(contains(b.err, "tables[0][1]"));
  CHECK(run_cli({"dimrep", dir.file("missing.json")}).code == cli::kExitUsage);
}

TEST_CASE("perm commands") {
  const Result o = run_cli({"perm", "order", "5", "(1,2)", "(1,2,3,4,5)"});
  CHECK(o.code == 0);
  CHECK(contains(o.out, "order 120"));
  const Result p = run_cli({"perm", "primitive", "4", "(1 2 3 4)"});
  CHECK(contains(p.out, "block {1 3}"));
  const Result j = run_cli({"perm", "jordan", "7", "(1 2 3)", "(1 2 3 4 5 6 7)"});
  CHECK(contains(j.out, "Alt"));
  CHECK(contains(j.out, "jordan-prime-cycle"));
  const Result s = run_cli({"perm", "star", "3", "(1 2 3)", "(1 2)"});
  CHECK(contains(s.out, "(1 3 2)"));
  const Result g = run_cli({"perm", "grid-order", "3"});
  CHECK(contains(g.out, "order 36"));

  const Result ob = run_cli({"--json", "perm", "obtainment", "7"});
  CHECK(ob.code == 0);
  const json oj = json::parse(ob.out);
  CHECK(oj["found"] == true);
  CHECK(oj["certificate_verified"] == true);

  const std::size_t n = 7;
  const Permutation gamma = arrangement_instance(1, n);
  const Result sc = run_cli({"perm", "somecycles", "7", "1", gamma.to_string()});
  CHECK(sc.code == 0);
  CHECK(contains(sc.out, "3-cycle"));
  // Matching picture, but a 5-cycle far away survives the recipe: exit 2.
  const Permutation far = Permutation::parse(
      n * n, grid_cycle(n, {{5, 5}, {5, 6}, {6, 5}, {6, 6}, {7, 7}}));
  const Result bad = run_cli({"perm", "somecycles", "7", "1", (gamma * far).to_string()});
  CHECK(bad.code == cli::kExitVerification);
  // Not matching the picture: usage error.
  CHECK(run_cli({"perm", "somecycles", "7", "1", "()"}).code == cli::kExitUsage);
  CHECK(run_cli({"perm", "order", "3", "(1 4)"}).code == cli::kExitUsage);
}

TEST_CASE("seeded reports are deterministic") {
  const Result a = run_cli({"--seed", "5", "--json", "perm", "jordan", "7", "(1 2 3)", "(1 2 3 4 5 6 7)"});
  const Result b = run_cli({"--seed", "5", "--json", "perm", "jordan", "7", "(1 2 3)", "(1 2 3 4 5 6 7)"});
  CHECK(a.out == b.out);
}

TEST_CASE("the installed binary") {
  const char* cli = std::getenv("STABAUT_CLI");
  if (cli == nullptr) return;
  auto exit_of = [&](const std::string& args, std::string* out) {
    const std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[512];
    while (fgets(buf, sizeof buf, pipe) != nullptr) *out += buf;
    const int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  std::string out;
  CHECK(exit_of("invariants 2 6", &out) == 0);
  CHECK(contains(out, "distinguishable (omega 1 vs 2)"));
  out.clear();
  CHECK(exit_of("orbits 3 3", &out) == 0);
  CHECK(contains(out, "8 orbits of least period 3"));
  out.clear();
  CHECK(exit_of("bogus", &out) == 1);
}
