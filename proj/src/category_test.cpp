#include "doctest.h"
#include "esnkit/category.hpp"
#include "esnkit/corpus.hpp"
#include "esnkit/esn.hpp"

using namespace esnkit;

namespace {

CategoryData c_i2_data() { return corpus_category("c_i2").data(); }

FailureCode code_of(CategoryData data) {
  auto c = validate_inductive_data(std::move(data));
  REQUIRE_FALSE(c.ok());
  return c.failure().code;
}

}  // namespace

TEST_CASE("C(I_2) tables") {
  auto c = corpus_category("c_i2");
  auto r = corpus_restriction("i2");
  CHECK(c.objects() == std::vector<Index>{0, 1, 5, 6});
  CHECK(c.is_groupoid());
  for (Index a = 0; a < 7; ++a) {
    CHECK(c.dom(a) == r.plus(a));
    CHECK(c.ran(a) == r.star(a));
    CHECK(c.inverse(a) == r.inverse()->inv[a]);
    for (Index b = 0; b < 7; ++b) {
      CHECK(c.defined(a, b) == (r.star(a) == r.plus(b)));
      if (c.defined(a, b)) CHECK(c.prod(a, b) == r.mul(a, b));
    }
  }
  // swap·swap = id; "0-"·"-1" is not composable.
  CHECK(c.prod(2, 2) == 0);
  CHECK_FALSE(c.defined(1, 5));
}

TEST_CASE("restriction, corestriction and meets by hand") {
  auto c = corpus_category("c_i2");
  // "0-" restricts the swap to "1-"; corestriction to range {0} gives "-0".
  CHECK(c.restrict(1, 2) == 3);
  CHECK(c.corestrict(2, 1) == 4);
  CHECK(c.meet(1, 5) == 6);
  CHECK(c.meet(0, 5) == 5);
  CHECK_THROWS_AS(c.meet(2, 0), Error);
  CHECK_THROWS_AS(c.restrict(0, 1), Error);  // id is not below dom("0-")
}

TEST_CASE("pseudoproduct matches the defining formula") {
  for (auto const& name : category_names()) {
    CAPTURE(name);
    auto c = corpus_category(name);
    for (Index a = 0; a < c.size(); ++a) {
      for (Index b = 0; b < c.size(); ++b) {
        Index const m = c.meet(c.ran(a), c.dom(b));
        Index const left = c.corestrict(a, m);
        Index const right = c.restrict(m, b);
        REQUIRE(c.defined(left, right));
        CHECK(c.pseudoproduct(a, b) == c.prod(left, right));
      }
    }
  }
}

TEST_CASE("corpus categories pass every level and all lemma suites") {
  for (auto const& name : category_names()) {
    CAPTURE(name);
    auto c = corpus_category(name);
    CHECK_FALSE(check_category_lemmas(c));
    CHECK_FALSE(check_lemma_so_useful(c));
    CHECK_FALSE(check_lemma_a_dab(c));
    CHECK_FALSE(check_lemma_rest_ord(c));
    CHECK_FALSE(check_lemma_apseudoe(c));
    CHECK_FALSE(check_objects_meet_semilattice(c));
    CHECK(c.is_groupoid());
    CHECK_FALSE(check_groupoid_corestriction(c));
  }
}

TEST_CASE("discrete category on a 3-chain") {
  auto c = corpus_category("chain3d");
  CHECK(c.objects().size() == 3);
  for (Index e = 0; e < 3; ++e)
    for (Index f = 0; f < 3; ++f) {
      CHECK(c.defined(e, f) == (e == f));
      CHECK(c.meet(e, f) == std::min(e, f));
    }
}

TEST_CASE("validation failures") {
  SUBCASE("objects must be exactly the identities") {
    auto d = c_i2_data();
    d.objects = {0, 1, 5};
    CHECK(code_of(d) == FailureCode::ObjectsMismatch);
  }
  SUBCASE("malformed shapes") {
    auto d = c_i2_data();
    d.dom.pop_back();
    CHECK(code_of(d) == FailureCode::MalformedTable);
  }
  SUBCASE("declared dom must be the identity found") {
    auto d = c_i2_data();
    d.dom[2] = 1;
    CHECK_FALSE(validate_inductive_data(d).ok());
  }
  SUBCASE("order must be a partial order") {
    auto d = c_i2_data();
    d.order->set(3, 3, false);
    CHECK(code_of(d) == FailureCode::NotPartialOrder);
  }
  SUBCASE("discrete order on C(I_2) is ordered but has no meets") {
    auto d = c_i2_data();
    Relation discrete(7);
    for (Index a = 0; a < 7; ++a) discrete.set(a, a);
    d.order = discrete;
    d.inv.reset();
    auto cat = validate_category(d);
    REQUIRE(cat);
    auto ordered = validate_ordered(*cat);
    // Corestrictions below r(a) only exist for f = r(a) now; those exist.
    REQUIRE(ordered);
    auto inductive = validate_inductive(*ordered);
    REQUIRE_FALSE(inductive);
    CHECK(inductive.failure().code == FailureCode::NoMeet);
  }
  SUBCASE("wrong declared inverse") {
    auto d = c_i2_data();
    (*d.inv)[2] = 0;
    CHECK(code_of(d) == FailureCode::NoInverse);
  }
  SUBCASE("order not compatible with the restriction scan") {
    auto d = c_i2_data();
    // Drop "1-" <= swap: the restriction of swap to "0-" disappears.
    d.order->set(3, 2, false);
    CHECK_FALSE(validate_inductive_data(d).ok());
  }
}

TEST_CASE("non-groupoid C(S)") {
  auto r = make_restriction(chain_semilattice(3), {0, 2}).value();
  auto c = c_of(r);
  REQUIRE(c);
  CHECK_FALSE(c->is_groupoid());
  CHECK_THROWS_AS(c->inverse(0), Error);
  auto g = validate_groupoid(*c);
  REQUIRE_FALSE(g);
  CHECK(g.failure().code == FailureCode::NoInverse);
  CHECK_FALSE(check_category_lemmas(*c));
}
