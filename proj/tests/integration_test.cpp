#include <array>
#include <filesystem>
#include <map>

#include "doctest.h"
#include "esnkit/corpus.hpp"
#include "esnkit/esn.hpp"
#include "esnkit/io.hpp"
#include "esnkit/szendrei.hpp"
#include "oracle.hpp"

using namespace esnkit;
namespace fs = std::filesystem;

namespace {

// I_2 tabulated from the reference implementation so the full 7^7 pass
// stays cheap.
struct I2Tables {
  std::array<std::array<Index, 7>, 7> mul{};
  std::array<std::array<bool, 7>, 7> le{};
  std::array<Index, 7> plus{}, star{}, inv{};

  I2Tables() {
    oracle::SymInverse ref(2);
    for (Index a = 0; a < 7; ++a) {
      plus[a] = ref.plus(a);
      star[a] = ref.star(a);
      inv[a] = ref.inv(a);
      for (Index b = 0; b < 7; ++b) {
        mul[a][b] = ref.mul(a, b);
        le[a][b] = ref.leq(a, b);
      }
    }
  }
};

std::map<std::string, std::uint64_t> reference_counts() {
  I2Tables const t;
  std::map<std::string, std::uint64_t> counts;
  std::array<Index, 7> v{};
  for (std::uint64_t k = 0; k < 823543; ++k) {
    std::uint64_t x = k;
    for (int i = 6; i >= 0; --i) {
      v[i] = static_cast<Index>(x % 7);
      x /= 7;
    }
    bool vee1 = true, vee2 = true, wedge1 = true, wedge2 = true, strong = true,
         order = true, morphism = true, inverse = true;
    for (Index a = 0; a < 7; ++a) {
      vee2 = vee2 && t.le[v[t.plus[a]]][t.plus[v[a]]] &&
             t.le[v[t.star[a]]][t.star[v[a]]];
      wedge2 = wedge2 && t.le[t.plus[v[a]]][v[t.plus[a]]] &&
               t.le[t.star[v[a]]][v[t.star[a]]];
      inverse = inverse && t.inv[v[a]] == v[t.inv[a]];
      morphism = morphism && v[t.plus[a]] == t.plus[v[a]] &&
                 v[t.star[a]] == t.star[v[a]];
      for (Index b = 0; b < 7; ++b) {
        Index const ab = v[t.mul[a][b]];
        Index const prod = t.mul[v[a]][v[b]];
        vee1 = vee1 && t.le[ab][prod];
        wedge1 = wedge1 && t.le[prod][ab];
        strong = strong && prod == t.mul[t.plus[v[a]]][ab] &&
                 prod == t.mul[ab][t.star[v[b]]];
        morphism = morphism && ab == prod;
        order = order && (!t.le[a][b] || t.le[v[a]][v[b]]);
      }
    }
    counts["vee1"] += vee1;
    counts["vee2"] += vee2;
    counts["wedge1"] += wedge1;
    counts["wedge2"] += wedge2;
    counts["wedge1Strong"] += strong;
    counts["orderPreserving"] += order;
    counts["morphism211"] += morphism && wedge1 && vee1;
    counts["inversePreserving"] += inverse;
    counts["veeR"] += vee1 && vee2;
    counts["wedgeR"] += wedge1 && wedge2;
    counts["strongWedgeR"] += wedge1 && wedge2 && strong;
    counts["orderedWedgeR"] += wedge1 && wedge2 && order;
  }
  return counts;
}

}  // namespace

TEST_CASE("I_2 sweep: semigroup-side counts match the reference pass") {
  auto i2 = corpus_pair("i2");
  auto sweep = transfer_sweep(i2, i2, SweepConfig{.threads = 0});
  REQUIRE(sweep);
  CHECK(sweep->maps == 823543);
  auto const ref = reference_counts();
  for (auto const& [flag, count] : ref) {
    CAPTURE(flag);
    CHECK(sweep->flag_counts.at(flag) == count);
  }
  // Frozen from the reference pass.
  CHECK(ref.at("vee1") == 20);
  CHECK(ref.at("vee2") == 10620);
  CHECK(ref.at("wedge1") == 2714);
  CHECK(ref.at("wedge2") == 5184);
  CHECK(ref.at("wedgeR") == 566);
  CHECK(ref.at("orderedWedgeR") == 45);
  CHECK(ref.at("strongWedgeR") == 39);
  CHECK(ref.at("orderPreserving") == 2503);
  CHECK(ref.at("morphism211") == 12);
  CHECK(ref.at("inversePreserving") == 21875);

  // Category side, frozen from the library sweep.
  std::map<std::string, std::uint64_t> const frozen = {
      {"functor", 140},       {"orderedFunctor", 20}, {"inductiveFunctor", 12},
      {"icp1", 63624},        {"icp2", 5184},         {"icp3", 2503},
      {"icp4", 5808},         {"icp5", 175},          {"prefunctor", 45},
      {"strongPrefunctor", 39}, {"igp", 21875},       {"ogp", 146},
      {"meetsPreserved", 8575}, {"wedgeI", 372},      {"orderedWedgeI", 39}};
  for (auto const& [flag, count] : frozen) {
    CAPTURE(flag);
    CHECK(sweep->flag_counts.at(flag) == count);
  }
}

TEST_CASE("corpus survives a trip through files") {
  auto const dir = fs::temp_directory_path() / "esnkit_integration";
  fs::create_directories(dir);
  for (auto const& name : restriction_names()) {
    CAPTURE(name);
    auto const& entry = corpus_semigroup(name);
    auto const path = (dir / (name + ".json")).string();
    io::write_file(path, io::emit_semigroup({name, entry.semigroup, entry.e}));
    auto back = io::parse_semigroup(io::read_file(path), path);
    auto r = make_restriction(back.semigroup, back.e);
    REQUIRE(r);
    CHECK(*r == corpus_restriction(name));
    auto c = c_of(*r);
    REQUIRE(c);
    auto cpath = (dir / (name + ".cat.json")).string();
    io::write_file(cpath, io::emit_category({name, c->data()}));
    auto cback = io::parse_category(io::read_file(cpath), cpath);
    auto revalidated = validate_inductive_data(cback.data);
    REQUIRE(revalidated);
    CHECK(s_of(*revalidated).value() == *r);
  }
  fs::remove_all(dir);
}

TEST_CASE("Szendrei expansion of a parsed groupoid") {
  auto text = io::emit_category({"z2g", corpus_category("z2g").data()});
  auto parsed = io::parse_category(text, "z2g");
  auto g = validate_inductive_data(parsed.data).value();
  auto sz = build_sz(g).value();
  CHECK(sz.size() == 3);
  CHECK_FALSE(check_sz_formulas(g, sz));
  auto s = s_of(sz.category).value();
  CHECK(s.is_inverse());
  CHECK(s.semilattice().members().size() == 2);
}

TEST_CASE("closure on the small endpoints") {
  std::vector<std::string> const ends = {"sl2", "i1"};
  for (auto const& a : ends)
    for (auto const& b : ends)
      for (auto const& c : ends) {
        CAPTURE(a + b + c);
        auto r = verify_composition_closure(corpus_pair(a), corpus_pair(b),
                                            corpus_pair(c), SweepConfig{});
        REQUIRE(r);
        CHECK(r->pairs == 16);
        CHECK(r->total_violations() == 0);
      }
}

TEST_CASE("ogp maps on C(I_2): inductive lift exists iff icp5 holds") {
  auto i2 = corpus_pair("i2");
  auto const& g = i2.category;
  auto sz = build_sz(g).value();
  auto ogp = enumerate_maps(i2, i2, "ogp", 1000, SweepConfig{});
  REQUIRE(ogp);
  REQUIRE(ogp->matches.size() == 146);
  std::size_t without = 0;
  for (auto const& [v, c] : ogp->matches) {
    CAPTURE(v);
    auto inductive = find_unique_lift(g, sz, g, v);
    CHECK(inductive.ok() == c.functor->icp5);
    if (!inductive) ++without;
    auto ordered = find_unique_lift(g, sz, g, v, kDefaultLiftBudget,
                                    LiftTarget::OrderedFunctor);
    CHECK(ordered.ok());
  }
  CHECK(without == 107);
}
