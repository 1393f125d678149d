#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static fs::path const dir = [] {
    auto d = fs::temp_directory_path() / "esnkit_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Run {
  int code;
  std::string out;
};

Run esnkit(std::string const& args) {
  auto const out = scratch() / "stdout.txt";
  std::string const cmd = std::string(ESNKIT_CLI) + " " + args + " > " +
                          out.string() + " 2>&1";
  int const status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string fixture(std::string const& name) {
  return (fs::path(ESNKIT_FIXTURES) / name).string();
}

std::string slurp(fs::path const& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check accepts restriction semigroups and reports failures") {
  auto ok = esnkit("check --in " + fixture("i2.semigroup.json"));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("result: ok") != std::string::npos);
  auto pt = esnkit("check --in " + fixture("pt2.semigroup.json"));
  CHECK(pt.code == 1);
  CHECK(pt.out.find("AMPLE_CONDITION_FAILS") != std::string::npos);
  auto lz = esnkit("check --in " + fixture("lz2.semigroup.json"));
  CHECK(lz.code == 1);
  CHECK(lz.out.find("NOT_COMMUTATIVE") != std::string::npos);
}

TEST_CASE("esn round trips from files") {
  for (auto const* f : {"i2.semigroup.json", "sl2.semigroup.json",
                        "c_i2.category.json", "sz_c_i2.category.json"}) {
    CAPTURE(f);
    CHECK(esnkit("esn --roundtrip --in " + fixture(f)).code == 0);
  }
  // C(I_2) written out by the tool equals the shipped fixture.
  auto const out = scratch() / "c_i2.json";
  REQUIRE(esnkit("esn --in " + fixture("i2.semigroup.json") + " --out " +
                 out.string())
              .code == 0);
  auto const written = slurp(out);
  auto const shipped = slurp(fixture("c_i2.category.json"));
  CHECK(written.find("\"kind\": \"category\"") != std::string::npos);
  CHECK(written.substr(written.find("\"n\"")) ==
        shipped.substr(shipped.find("\"n\"")));
}

TEST_CASE("szendrei") {
  auto r = esnkit("szendrei --check-formulas --in " + fixture("z2g.category.json") +
                  " --target trivialg");
  CHECK(r.code == 0);
  CHECK(r.out.find("result: ok") != std::string::npos);
  CHECK(esnkit("szendrei --check-formulas --in c_i2").code == 0);
}

TEST_CASE("classify and hasse") {
  auto r = esnkit("classify --in " + fixture("i2_identity.map.json") +
                  " --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"ok\": true") != std::string::npos);
  auto id = esnkit("hasse --in " + fixture("i2_identity.map.json"));
  CHECK(id.code == 0);
  CHECK(id.out.find("IG_ind") != std::string::npos);
  // This ogp sits outside the strong prefunctors, which the diagram flags.
  auto h = esnkit("hasse --from i2 --to i2 --values 0 0 0 0 0 0 1");
  CHECK(h.code == 1);
  CHECK(h.out.find("inclusion violated: IG_ogp <= IC_strong") !=
        std::string::npos);
  auto c = esnkit("classify --in " + fixture("i2_ogp_not_strong.map.json"));
  CHECK(c.out.find("icp5: 0") != std::string::npos);
}

TEST_CASE("enumerate") {
  auto r = esnkit("enumerate --from sl2 --to sl2 --filter veeR");
  CHECK(r.code == 0);
  CHECK(r.out.find("maps: 4") != std::string::npos);
  auto over = esnkit("enumerate --from i3 --to i3 --budget 1000");
  CHECK(over.code == 1);
  CHECK(over.out.find("BUDGET_EXCEEDED") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  auto a = esnkit("enumerate --from i2 --to i2 --filter strongWedgeR --format json");
  auto b = esnkit(
      "enumerate --from i2 --to i2 --filter strongWedgeR --format json --threads 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto s1 = esnkit("enumerate --from i3 --to i3 --seed 7 --samples 5000 --format json");
  auto s2 = esnkit(
      "enumerate --from i3 --to i3 --seed 7 --samples 5000 --format json --threads 2");
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
  CHECK(s1.out.find("wall_seconds") == std::string::npos);
}

TEST_CASE("usage and parse errors exit with 2") {
  auto const bad = scratch() / "bad.json";
  std::ofstream(bad) << "{\"kind\": \"semigroup\", \"n\": 2,\n \"table\": [[0,";
  auto r = esnkit("check --in " + bad.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("line 2") != std::string::npos);
  CHECK(esnkit("check --in /nonexistent.json").code == 2);
  CHECK(esnkit("frobnicate").code == 2);
  CHECK(esnkit("classify --from i2 --to i2 --values 0 1").code == 2);
}

TEST_CASE("gen writes the corpus") {
  auto const dir = scratch() / "corpus";
  REQUIRE(esnkit("gen --corpus default --out " + dir.string()).code == 0);
  for (auto const* f : {"i3.semigroup.json", "sz_z2.category.json"})
    CHECK(slurp(dir / f) == slurp(fixture(f)));
  auto r = esnkit("gen --kind I --n 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"n\": 34") != std::string::npos);
}
