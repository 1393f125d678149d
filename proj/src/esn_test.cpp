#include "doctest.h"
#include "esnkit/corpus.hpp"
#include "esnkit/esn.hpp"
#include "../tests/oracle.hpp"

using namespace esnkit;

TEST_CASE("S -> C(S) -> S round trips on the restriction corpus") {
  for (auto const& name : restriction_names()) {
    CAPTURE(name);
    auto r = corpus_restriction(name);
    CHECK_FALSE(roundtrip_semigroup(r));
    auto c = c_of(r);
    REQUIRE(c);
    CHECK_FALSE(check_esn_cells(r, *c));
    CHECK(c->objects() == r.semilattice().members());
  }
}

TEST_CASE("C -> S(C) -> C round trips on the category corpus") {
  for (auto const& name : category_names()) {
    CAPTURE(name);
    auto c = corpus_category(name);
    CHECK_FALSE(roundtrip_category(c));
    auto s = s_of(c);
    REQUIRE(s);
    CHECK(s->semilattice().members() == c.objects());
    for (Index a = 0; a < c.size(); ++a) {
      CHECK(s->plus(a) == c.dom(a));
      CHECK(s->star(a) == c.ran(a));
      for (Index b = 0; b < c.size(); ++b) {
        CHECK(s->mul(a, b) == c.pseudoproduct(a, b));
        CHECK(s->leq(a, b) == c.leq(a, b));
      }
    }
  }
}

TEST_CASE("C(S) product is the restricted product") {
  // Independent restricted product on I_2 from image arrays.
  oracle::SymInverse ref(2);
  auto c = corpus_category("c_i2");
  for (Index a = 0; a < 7; ++a)
    for (Index b = 0; b < 7; ++b) {
      bool const composable = ref.star(a) == ref.plus(b);
      CHECK(c.defined(a, b) == composable);
      if (composable) CHECK(c.prod(a, b) == ref.mul(a, b));
    }
}

TEST_CASE("inverse specialization") {
  for (auto const& name : restriction_names()) {
    CAPTURE(name);
    auto r = corpus_restriction(name);
    if (r.is_inverse()) {
      CHECK_FALSE(inverse_specialization(r));
      CHECK(c_of(r)->is_groupoid());
    }
  }
  auto nongroupoid = make_restriction(chain_semilattice(3), {0, 2}).value();
  CHECK_FALSE(c_of(nongroupoid)->is_groupoid());
  CHECK_FALSE(roundtrip_semigroup(nongroupoid));
}

TEST_CASE("S of an inductive groupoid is inverse") {
  for (auto const* name : {"c_i2", "z2g", "sz_z2", "sz_c_i2"}) {
    CAPTURE(name);
    auto g = corpus_category(name);
    CHECK_FALSE(groupoid_gives_inverse(g));
    CHECK(s_of(g)->is_inverse());
  }
}
