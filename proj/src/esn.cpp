#include "esnkit/esn.hpp"

namespace esnkit {

Checked<InductiveCategory> c_of(RestrictionStructure const& r) {
  auto const n = r.size();
  CategoryData data;
  data.n = n;
  data.objects = r.semilattice().members();
  data.dom = r.plus_map();
  data.ran = r.star_map();
  data.prod.assign(n * n, kUndefined);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (r.star(a) == r.plus(b)) {
        data.prod[a * n + b] = r.mul(a, b);
      }
    }
  }
  data.order = r.order();
  if (r.inverse()) {
    data.inv = r.inverse()->inv;
  }
  data.labels = r.base().labels();
  return validate_inductive_data(std::move(data));
}

Checked<RestrictionStructure> s_of(InductiveCategory const& c) {
  auto const n = c.size();
  auto semigroup =
      FiniteSemigroup(n, c.pseudoproduct_table(), c.data().labels);
  if (auto failure = check_associativity(semigroup.rows())) {
    return *failure;
  }
  auto lattice = validate_semilattice(semigroup, c.objects());
  if (!lattice) {
    return lattice.failure();
  }
  auto r = derive_restriction(semigroup, *lattice);
  if (!r) {
    return r.failure();
  }
  for (Index a = 0; a < n; ++a) {
    if (r->plus(a) != c.dom(a) || r->star(a) != c.ran(a)) {
      return make_failure(FailureCode::EsnMismatch, {a},
                          "derived plus/star differ from dom/ran");
    }
  }
  if (r->order() != c.order()) {
    return make_failure(FailureCode::EsnMismatch, {},
                        "derived natural order differs from category order");
  }
  return r;
}

namespace {

Verdict first_table_mismatch(std::vector<Index> const& lhs,
                             std::vector<Index> const& rhs, std::size_t n,
                             std::string const& what) {
  if (lhs.size() != rhs.size()) {
    return make_failure(FailureCode::RoundtripMismatch, {}, what + " size");
  }
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] != rhs[i]) {
      if (n != 0 && lhs.size() == n * n) {
        return make_failure(FailureCode::RoundtripMismatch,
                            {static_cast<Index>(i / n),
                             static_cast<Index>(i % n)},
                            what);
      }
      return make_failure(FailureCode::RoundtripMismatch,
                          {static_cast<Index>(i)}, what);
    }
  }
  return std::nullopt;
}

Verdict first_order_mismatch(Relation const& lhs, Relation const& rhs) {
  if (lhs.size() != rhs.size()) {
    return make_failure(FailureCode::RoundtripMismatch, {}, "order size");
  }
  for (Index a = 0; a < lhs.size(); ++a) {
    for (Index b = 0; b < lhs.size(); ++b) {
      if (lhs.holds(a, b) != rhs.holds(a, b)) {
        return make_failure(FailureCode::RoundtripMismatch, {a, b}, "order");
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict roundtrip_semigroup(RestrictionStructure const& r) {
  auto c = c_of(r);
  if (!c) {
    return c.failure();
  }
  auto back = s_of(*c);
  if (!back) {
    return back.failure();
  }
  auto const n = r.size();
  if (auto f = first_table_mismatch(r.base().flat_table(),
                                    back->base().flat_table(), n, "table")) {
    return f;
  }
  if (r.semilattice().members() != back->semilattice().members()) {
    return make_failure(FailureCode::RoundtripMismatch, {}, "E");
  }
  if (auto f = first_table_mismatch(r.plus_map(), back->plus_map(), 0,
                                    "plus")) {
    return f;
  }
  if (auto f = first_table_mismatch(r.star_map(), back->star_map(), 0,
                                    "star")) {
    return f;
  }
  return first_order_mismatch(r.order(), back->order());
}

Verdict roundtrip_category(InductiveCategory const& c) {
  auto s = s_of(c);
  if (!s) {
    return s.failure();
  }
  auto back = c_of(*s);
  if (!back) {
    return back.failure();
  }
  auto const n = c.size();
  auto const& lhs = c.data();
  auto const& rhs = back->data();
  if (lhs.objects != rhs.objects) {
    return make_failure(FailureCode::RoundtripMismatch, {}, "objects");
  }
  if (auto f = first_table_mismatch(lhs.dom, rhs.dom, 0, "dom")) {
    return f;
  }
  if (auto f = first_table_mismatch(lhs.ran, rhs.ran, 0, "ran")) {
    return f;
  }
  if (auto f = first_table_mismatch(lhs.prod, rhs.prod, n, "product")) {
    return f;
  }
  return first_order_mismatch(c.order(), back->order());
}

Verdict check_esn_cells(RestrictionStructure const& r,
                        InductiveCategory const& c) {
  auto const n = r.size();
  for (Index a = 0; a < n; ++a) {
    for (Index f : c.objects()) {
      if (c.leq(f, c.dom(a)) && c.restrict(f, a) != r.mul(f, a)) {
        return make_failure(FailureCode::EsnMismatch, {f, a}, "f|a != fa");
      }
      if (c.leq(f, c.ran(a)) && c.corestrict(a, f) != r.mul(a, f)) {
        return make_failure(FailureCode::EsnMismatch, {a, f}, "a|f != af");
      }
    }
    for (Index b = 0; b < n; ++b) {
      if (c.pseudoproduct(a, b) != r.mul(a, b)) {
        return make_failure(FailureCode::EsnMismatch, {a, b}, "a*b != ab");
      }
    }
  }
  for (Index e : c.objects()) {
    for (Index f : c.objects()) {
      if (c.meet(e, f) != r.mul(e, f)) {
        return make_failure(FailureCode::EsnMismatch, {e, f}, "e^f != ef");
      }
    }
  }
  return std::nullopt;
}

Verdict inverse_specialization(RestrictionStructure const& r) {
  if (!r.inverse()) {
    return make_failure(FailureCode::NotRegular, {},
                        "restriction structure carries no inverse certificate");
  }
  auto c = c_of(r);
  if (!c) {
    return c.failure();
  }
  if (!c->is_groupoid()) {
    return make_failure(FailureCode::NoInverse, {}, "C(S) is not a groupoid");
  }
  auto const& inv = r.inverse()->inv;
  for (Index a = 0; a < r.size(); ++a) {
    if (c->inverse(a) != inv[a]) {
      return make_failure(FailureCode::EsnMismatch, {a},
                          "groupoid inverse differs from semigroup inverse");
    }
  }
  return groupoid_gives_inverse(*c);
}

Verdict groupoid_gives_inverse(InductiveCategory const& g) {
  auto groupoid = validate_groupoid(g);
  if (!groupoid) {
    return groupoid.failure();
  }
  auto s = s_of(*groupoid);
  if (!s) {
    return s.failure();
  }
  auto cert = check_inverse(s->base());
  if (!cert) {
    return cert.failure();
  }
  for (Index a = 0; a < g.size(); ++a) {
    if (cert->inv[a] != groupoid->inverse(a)) {
      return make_failure(FailureCode::EsnMismatch, {a},
                          "S(G) inverse differs from groupoid inverse");
    }
  }
  if (!s->inverse()) {
    return make_failure(FailureCode::EsnMismatch, {},
                        "S(G) inverse but E is not E(S)");
  }
  return std::nullopt;
}

}  // namespace esnkit
