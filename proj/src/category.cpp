#include "esnkit/category.hpp"

#include <algorithm>

namespace esnkit {

Index Category::inverse(Index x) const {
  if (!data_.inv) {
    throw Error("inverse: category is not a validated groupoid");
  }
  return (*data_.inv)[x];
}

std::string Category::label(Index x) const {
  if (x < data_.labels.size()) {
    return data_.labels[x];
  }
  return std::to_string(x);
}

Index OrderedCategory::restrict(Index e, Index a) const {
  Index const b = restriction_[e * data_.n + a];
  if (b == kUndefined) {
    throw Error("restrict: requires an object e <= dom(a)");
  }
  return b;
}

Index OrderedCategory::corestrict(Index a, Index f) const {
  Index const b = corestriction_[a * data_.n + f];
  if (b == kUndefined) {
    throw Error("corestrict: requires an object f <= ran(a)");
  }
  return b;
}

Index InductiveCategory::meet(Index e, Index f) const {
  Index const m = meet_[e * data_.n + f];
  if (m == kUndefined) {
    throw Error("meet: arguments must be objects");
  }
  return m;
}

namespace {

Verdict check_shapes(CategoryData const& d) {
  auto const n = d.n;
  auto in_range = [n](Index x) { return x < n; };
  if (d.dom.size() != n || d.ran.size() != n || d.prod.size() != n * n) {
    return make_failure(FailureCode::MalformedTable, {},
                        "dom/ran/prod sizes do not match n");
  }
  if (!std::all_of(d.dom.begin(), d.dom.end(), in_range) ||
      !std::all_of(d.ran.begin(), d.ran.end(), in_range) ||
      !std::all_of(d.objects.begin(), d.objects.end(), in_range)) {
    return make_failure(FailureCode::MalformedTable, {},
                        "dom/ran/objects entry out of range");
  }
  for (Index x : d.prod) {
    if (x != kUndefined && x >= n) {
      return make_failure(FailureCode::MalformedTable, {x},
                          "product entry out of range");
    }
  }
  if (d.order && d.order->size() != n) {
    return make_failure(FailureCode::MalformedTable, {},
                        "order size does not match n");
  }
  if (d.inv && (d.inv->size() != n ||
                !std::all_of(d.inv->begin(), d.inv->end(), in_range))) {
    return make_failure(FailureCode::MalformedTable, {},
                        "inverse table malformed");
  }
  if (!d.labels.empty() && d.labels.size() != n) {
    return make_failure(FailureCode::MalformedTable, {},
                        "label count does not match n");
  }
  return std::nullopt;
}

}  // namespace

Checked<Category> validate_category(CategoryData data) {
  if (auto failure = check_shapes(data)) {
    return *failure;
  }
  auto const n = data.n;
  std::sort(data.objects.begin(), data.objects.end());
  data.objects.erase(std::unique(data.objects.begin(), data.objects.end()),
                     data.objects.end());

  std::vector<Index> identities;
  for (Index e = 0; e < n; ++e) {
    if (data.product(e, e) != e) {
      continue;
    }
    bool identity = true;
    for (Index x = 0; x < n && identity; ++x) {
      Index const ex = data.product(e, x);
      Index const xe = data.product(x, e);
      identity = (ex == kUndefined || ex == x) && (xe == kUndefined || xe == x);
    }
    if (identity) {
      identities.push_back(e);
    }
  }
  if (identities != data.objects) {
    std::vector<Index> diff;
    std::set_symmetric_difference(identities.begin(), identities.end(),
                                  data.objects.begin(), data.objects.end(),
                                  std::back_inserter(diff));
    return make_failure(FailureCode::ObjectsMismatch, {diff.front()},
                        "declared objects differ from two-sided identities");
  }

  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      Index const xy = data.product(x, y);
      for (Index z = 0; z < n; ++z) {
        Index const yz = data.product(y, z);
        Index const left = yz == kUndefined ? kUndefined : data.product(x, yz);
        Index const right = xy == kUndefined ? kUndefined : data.product(xy, z);
        if (left != right) {
          return make_failure(FailureCode::Ca1, {x, y, z});
        }
      }
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      for (Index z = 0; z < n; ++z) {
        Index const yz = data.product(y, z);
        bool const lhs = yz != kUndefined && data.product(x, yz) != kUndefined;
        bool const rhs =
            data.product(x, y) != kUndefined && yz != kUndefined;
        if (lhs != rhs) {
          return make_failure(FailureCode::Ca2, {x, y, z});
        }
      }
    }
  }
  for (Index x = 0; x < n; ++x) {
    std::vector<Index> left;
    std::vector<Index> right;
    for (Index e : identities) {
      if (data.product(e, x) != kUndefined) {
        left.push_back(e);
      }
      if (data.product(x, e) != kUndefined) {
        right.push_back(e);
      }
    }
    if (left.size() != 1 || right.size() != 1) {
      return make_failure(FailureCode::Ca3, {x},
                          "domain/range identity missing or not unique");
    }
    if (left.front() != data.dom[x] || right.front() != data.ran[x]) {
      return make_failure(FailureCode::Ca3, {x},
                          "declared dom/ran differ from the Ca3 identities");
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      bool const defined = data.product(x, y) != kUndefined;
      if (defined != (data.ran[x] == data.dom[y])) {
        return make_failure(FailureCode::Composability, {x, y},
                            "x.y exists iff r(x) = d(y) fails");
      }
    }
  }

  Category category;
  category.object_mask_.assign(n, 0);
  for (Index e : data.objects) {
    category.object_mask_[e] = 1;
  }
  category.data_ = std::move(data);
  return category;
}

Checked<OrderedCategory> validate_ordered(Category const& category) {
  auto const& data = category.data();
  if (!data.order) {
    return make_failure(FailureCode::NotPartialOrder, {}, "no order given");
  }
  auto const& order = *data.order;
  if (auto failure = order.check_partial_order()) {
    return *failure;
  }
  auto const n = data.n;
  auto const below = order.pairs();
  for (auto [a, c] : below) {
    for (auto [b, d] : below) {
      if (category.defined(a, b) && category.defined(c, d) &&
          !order.holds(category.prod(a, b), category.prod(c, d))) {
        return make_failure(FailureCode::Or1, {a, b, c, d});
      }
    }
  }
  for (auto [a, b] : below) {
    if (!order.holds(category.ran(a), category.ran(b)) ||
        !order.holds(category.dom(a), category.dom(b))) {
      return make_failure(FailureCode::Or2, {a, b});
    }
  }

  OrderedCategory result;
  static_cast<Category&>(result) = category;
  result.restriction_.assign(n * n, kUndefined);
  result.corestriction_.assign(n * n, kUndefined);
  for (Index a = 0; a < n; ++a) {
    for (Index f : data.objects) {
      if (!order.holds(f, category.ran(a))) {
        continue;
      }
      std::vector<Index> found;
      for (Index b = 0; b < n; ++b) {
        if (order.holds(b, a) && category.ran(b) == f) {
          found.push_back(b);
        }
      }
      if (found.empty()) {
        return make_failure(FailureCode::MissingCorestriction, {a, f});
      }
      if (found.size() > 1) {
        return make_failure(FailureCode::NonuniqueCorestriction,
                            {a, f, found[0], found[1]});
      }
      result.corestriction_[a * n + f] = found.front();
    }
  }
  for (Index a = 0; a < n; ++a) {
    for (Index e : data.objects) {
      if (!order.holds(e, category.dom(a))) {
        continue;
      }
      std::vector<Index> found;
      for (Index b = 0; b < n; ++b) {
        if (order.holds(b, a) && category.dom(b) == e) {
          found.push_back(b);
        }
      }
      if (found.empty()) {
        return make_failure(FailureCode::MissingRestriction, {e, a});
      }
      if (found.size() > 1) {
        return make_failure(FailureCode::NonuniqueRestriction,
                            {e, a, found[0], found[1]});
      }
      result.restriction_[e * n + a] = found.front();
    }
  }
  return result;
}

Checked<InductiveCategory> validate_inductive(
    OrderedCategory const& category) {
  auto const n = category.size();
  auto const& objects = category.objects();
  InductiveCategory result;
  static_cast<OrderedCategory&>(result) = category;
  result.meet_.assign(n * n, kUndefined);
  for (Index e : objects) {
    for (Index f : objects) {
      std::vector<Index> lower;
      for (Index g : objects) {
        if (category.leq(g, e) && category.leq(g, f)) {
          lower.push_back(g);
        }
      }
      Index greatest = kUndefined;
      for (Index m : lower) {
        bool const above_all = std::all_of(
            lower.begin(), lower.end(),
            [&](Index g) { return category.leq(g, m); });
        if (above_all) {
          greatest = m;
          break;
        }
      }
      if (greatest == kUndefined) {
        return make_failure(FailureCode::NoMeet, {e, f},
                            "no greatest lower bound among objects");
      }
      result.meet_[e * n + f] = greatest;
    }
  }
  result.pseudo_.assign(n * n, kUndefined);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      Index const m = result.meet(category.ran(a), category.dom(b));
      Index const left = category.corestrict(a, m);
      Index const right = category.restrict(m, b);
      Index const p = category.prod(left, right);
      if (p == kUndefined) {
        return make_failure(FailureCode::InternalInconsistency, {a, b},
                            "pseudoproduct factors not composable");
      }
      result.pseudo_[a * n + b] = p;
    }
  }
  return result;
}

Checked<std::vector<Index>> find_inverses(Category const& category) {
  auto const n = category.size();
  auto is_inverse = [&](Index x, Index y) {
    return category.prod(x, y) == category.dom(x) &&
           category.prod(y, x) == category.ran(x);
  };
  std::vector<Index> inv(n, kUndefined);
  for (Index x = 0; x < n; ++x) {
    if (category.data().inv) {
      Index const y = (*category.data().inv)[x];
      if (!is_inverse(x, y)) {
        return make_failure(FailureCode::NoInverse, {x},
                            "declared inverse fails (G)");
      }
      inv[x] = y;
      continue;
    }
    for (Index y = 0; y < n && inv[x] == kUndefined; ++y) {
      if (is_inverse(x, y)) {
        inv[x] = y;
      }
    }
    if (inv[x] == kUndefined) {
      return make_failure(FailureCode::NoInverse, {x});
    }
  }
  return inv;
}

Checked<InductiveCategory> validate_inductive_data(CategoryData data) {
  bool const groupoid = data.inv.has_value();
  auto category = validate_category(std::move(data));
  if (!category) {
    return category.failure();
  }
  auto ordered = validate_ordered(*category);
  if (!ordered) {
    return ordered.failure();
  }
  auto inductive = validate_inductive(*ordered);
  if (!inductive || !groupoid) {
    return inductive;
  }
  return validate_groupoid(std::move(inductive).value());
}

Verdict check_lemma_so_useful(OrderedCategory const& c) {
  auto const n = c.size();
  for (Index top = 0; top < n; ++top) {
    for (Index a = 0; a < n; ++a) {
      if (!c.leq(a, top)) {
        continue;
      }
      for (Index b = 0; b < n; ++b) {
        if (a != b && c.leq(b, top) &&
            (c.dom(a) == c.dom(b) || c.ran(a) == c.ran(b))) {
          return make_failure(FailureCode::LemmaViolation, {a, b, top},
                              "so-useful");
        }
      }
    }
  }
  return std::nullopt;
}

Verdict check_lemma_a_dab(OrderedCategory const& c) {
  for (auto [a, b] : c.order().pairs()) {
    if (c.restrict(c.dom(a), b) != a || c.corestrict(b, c.ran(a)) != a) {
      return make_failure(FailureCode::LemmaViolation, {a, b}, "a=d(a)|b");
    }
  }
  return std::nullopt;
}

Verdict check_lemma_rest_ord(OrderedCategory const& c) {
  auto const n = c.size();
  auto const& objects = c.objects();
  for (Index a = 0; a < n; ++a) {
    for (Index e : objects) {
      for (Index f : objects) {
        if (!c.leq(f, e)) {
          continue;
        }
        if (c.leq(e, c.ran(a))) {
          Index const ae = c.corestrict(a, e);
          Index const af = c.corestrict(a, f);
          if (c.corestrict(ae, f) != af || !c.leq(af, ae)) {
            return make_failure(FailureCode::LemmaViolation, {a, e, f},
                                "rest-ord (corestriction)");
          }
        }
        if (c.leq(e, c.dom(a))) {
          Index const ea = c.restrict(e, a);
          Index const fa = c.restrict(f, a);
          if (c.restrict(f, ea) != fa || !c.leq(fa, ea)) {
            return make_failure(FailureCode::LemmaViolation, {a, e, f},
                                "rest-ord (restriction)");
          }
        }
      }
    }
  }
  return std::nullopt;
}

Verdict check_lemma_apseudoe(InductiveCategory const& c) {
  auto const n = c.size();
  for (Index a = 0; a < n; ++a) {
    for (Index e : c.objects()) {
      if (c.pseudoproduct(e, a) != c.restrict(c.meet(e, c.dom(a)), a)) {
        return make_failure(FailureCode::LemmaViolation, {e, a},
                            "e*a = (e^d(a))|a");
      }
      if (c.pseudoproduct(a, e) != c.corestrict(a, c.meet(c.ran(a), e))) {
        return make_failure(FailureCode::LemmaViolation, {a, e},
                            "a*e = a|(r(a)^e)");
      }
    }
    for (Index b = 0; b < n; ++b) {
      if (c.defined(a, b) && c.pseudoproduct(a, b) != c.prod(a, b)) {
        return make_failure(FailureCode::LemmaViolation, {a, b},
                            "pseudoproduct differs from defined product");
      }
    }
  }
  return std::nullopt;
}

Verdict check_object_restrictions(OrderedCategory const& c) {
  for (Index e : c.objects()) {
    for (Index f : c.objects()) {
      if (c.leq(e, f) && c.restrict(e, f) != e) {
        return make_failure(FailureCode::LemmaViolation, {e, f},
                            "object restriction e|f != e");
      }
      if (c.leq(f, e) && c.corestrict(e, f) != f) {
        return make_failure(FailureCode::LemmaViolation, {e, f},
                            "object corestriction e|f != f");
      }
    }
  }
  return std::nullopt;
}

Verdict check_groupoid_corestriction(InductiveCategory const& c) {
  if (!c.is_groupoid()) {
    return std::nullopt;
  }
  for (Index a = 0; a < c.size(); ++a) {
    for (Index f : c.objects()) {
      if (!c.leq(f, c.ran(a))) {
        continue;
      }
      if (c.corestrict(a, f) != c.inverse(c.restrict(f, c.inverse(a)))) {
        return make_failure(FailureCode::LemmaViolation, {a, f},
                            "a|f != (f|a^-1)^-1");
      }
    }
  }
  return std::nullopt;
}

Verdict check_objects_meet_semilattice(InductiveCategory const& c) {
  auto const& objects = c.objects();
  for (Index e : objects) {
    if (c.meet(e, e) != e) {
      return make_failure(FailureCode::LemmaViolation, {e}, "e^e != e");
    }
    for (Index f : objects) {
      Index const m = c.meet(e, f);
      if (m != c.meet(f, e) || !c.leq(m, e) || !c.leq(m, f)) {
        return make_failure(FailureCode::LemmaViolation, {e, f},
                            "meet is not a commutative lower bound");
      }
      for (Index g : objects) {
        if (c.meet(c.meet(e, f), g) != c.meet(e, c.meet(f, g))) {
          return make_failure(FailureCode::LemmaViolation, {e, f, g},
                              "meet not associative");
        }
      }
    }
  }
  return std::nullopt;
}

Verdict check_category_lemmas(InductiveCategory const& c) {
  for (auto check : {check_lemma_so_useful, check_lemma_a_dab,
                     check_lemma_rest_ord, check_object_restrictions}) {
    if (auto failure = check(c)) {
      return failure;
    }
  }
  for (auto check : {check_lemma_apseudoe, check_groupoid_corestriction,
                     check_objects_meet_semilattice}) {
    if (auto failure = check(c)) {
      return failure;
    }
  }
  return std::nullopt;
}

}  // namespace esnkit
