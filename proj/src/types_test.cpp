#include "doctest.h"
#include "esnkit/types.hpp"

using namespace esnkit;

TEST_CASE("failure rendering") {
  auto f = make_failure(FailureCode::NotAssociative, {1, 0, 1}, "(ab)c != a(bc)");
  CHECK(code_name(f.code) == "NOT_ASSOCIATIVE");
  CHECK(to_string(f) == "NOT_ASSOCIATIVE witness=(1,0,1): (ab)c != a(bc)");
  CHECK(code_name(FailureCode::AmpleConditionFails) == "AMPLE_CONDITION_FAILS");
  CHECK(code_name(FailureCode::BudgetExceeded) == "BUDGET_EXCEEDED");
}

TEST_CASE("Checked holds a value or a failure") {
  Checked<int> good = 3;
  CHECK(good.ok());
  CHECK(*good == 3);
  Checked<int> bad = make_failure(FailureCode::NoMeet, {0, 1});
  CHECK_FALSE(bad);
  CHECK(bad.failure().witness == std::vector<Index>{0, 1});
  CHECK_THROWS_AS(bad.value(), Error);
}

TEST_CASE("relation partial order checks in a fixed order") {
  Relation r(3);
  CHECK(r.check_partial_order()->code == FailureCode::NotPartialOrder);
  CHECK(r.check_partial_order()->witness == std::vector<Index>{0});
  for (Index i = 0; i < 3; ++i) r.set(i, i);
  CHECK_FALSE(r.check_partial_order());
  r.set(0, 1);
  r.set(1, 2);
  auto f = r.check_partial_order();
  REQUIRE(f);
  CHECK(f->witness == std::vector<Index>{0, 1, 2});  // transitivity
  r.set(0, 2);
  CHECK_FALSE(r.check_partial_order());
  r.set(2, 0);
  REQUIRE(r.check_partial_order());
  CHECK(r.check_partial_order()->witness == std::vector<Index>{0, 2});

  Relation p(2);
  p.set(1, 0);
  p.set(0, 0);
  CHECK(p.pairs() == std::vector<std::pair<Index, Index>>{{0, 0}, {1, 0}});
}
