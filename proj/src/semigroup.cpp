#include "esnkit/semigroup.hpp"

#include <algorithm>
#include <sstream>

namespace esnkit {

Verdict check_associativity(CayleyRows const& rows) {
  auto const n = rows.size();
  for (Index a = 0; a < n; ++a) {
    if (rows[a].size() != n) {
      return make_failure(FailureCode::MalformedTable, {a},
                          "row length differs from element count");
    }
    for (Index b = 0; b < n; ++b) {
      if (rows[a][b] >= n) {
        return make_failure(FailureCode::MalformedTable, {a, b},
                            "entry out of range");
      }
    }
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      Index const ab = rows[a][b];
      for (Index c = 0; c < n; ++c) {
        if (rows[ab][c] != rows[a][rows[b][c]]) {
          return make_failure(FailureCode::NotAssociative, {a, b, c});
        }
      }
    }
  }
  return std::nullopt;
}

FiniteSemigroup::FiniteSemigroup(std::size_t n, std::vector<Index> flat_table,
                                 std::vector<std::string> labels)
    : n_(n), table_(std::move(flat_table)), labels_(std::move(labels)) {
  if (table_.size() != n_ * n_) {
    throw Error("semigroup table must have n*n entries");
  }
  for (Index x : table_) {
    if (x >= n_) {
      throw Error("semigroup table entry out of range");
    }
  }
  if (!labels_.empty() && labels_.size() != n_) {
    throw Error("semigroup labels must be empty or have n entries");
  }
}

Checked<FiniteSemigroup> FiniteSemigroup::make(
    CayleyRows const& rows, std::vector<std::string> labels) {
  if (auto failure = check_associativity(rows)) {
    return *failure;
  }
  if (!labels.empty() && labels.size() != rows.size()) {
    return make_failure(FailureCode::MalformedTable, {},
                        "label count differs from element count");
  }
  std::vector<Index> flat;
  flat.reserve(rows.size() * rows.size());
  for (auto const& row : rows) {
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return FiniteSemigroup(rows.size(), std::move(flat), std::move(labels));
}

CayleyRows FiniteSemigroup::rows() const {
  CayleyRows result(n_, std::vector<Index>(n_));
  for (Index a = 0; a < n_; ++a) {
    for (Index b = 0; b < n_; ++b) {
      result[a][b] = mul(a, b);
    }
  }
  return result;
}

std::vector<Index> FiniteSemigroup::idempotents() const {
  std::vector<Index> result;
  for (Index a = 0; a < n_; ++a) {
    if (is_idempotent(a)) {
      result.push_back(a);
    }
  }
  return result;
}

std::string FiniteSemigroup::label(Index a) const {
  if (a < labels_.size()) {
    return labels_[a];
  }
  return std::to_string(a);
}

Checked<DistinguishedSemilattice> validate_semilattice(
    FiniteSemigroup const& s, std::vector<Index> e) {
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  for (Index x : e) {
    if (x >= s.size()) {
      return make_failure(FailureCode::IndexOutOfRange, {x});
    }
  }
  if (e.empty() && s.size() != 0) {
    return make_failure(FailureCode::EmptySemilattice, {},
                        "a nonempty semigroup needs a nonempty E");
  }
  for (Index x : e) {
    if (!s.is_idempotent(x)) {
      return make_failure(FailureCode::NonIdempotentMember, {x});
    }
  }
  DistinguishedSemilattice result;
  result.mask_.assign(s.size(), 0);
  for (Index x : e) {
    result.mask_[x] = 1;
  }
  for (Index x : e) {
    for (Index y : e) {
      if (result.mask_[s.mul(x, y)] == 0) {
        return make_failure(FailureCode::NotClosed, {x, y});
      }
    }
  }
  for (Index x : e) {
    for (Index y : e) {
      if (s.mul(x, y) != s.mul(y, x)) {
        return make_failure(FailureCode::NotCommutative, {x, y});
      }
    }
  }
  result.members_ = std::move(e);
  return result;
}

EquivalenceRelation::EquivalenceRelation(std::vector<Index> block_of)
    : block_of_(std::move(block_of)) {
  for (Index a = 0; a < block_of_.size(); ++a) {
    Index const b = block_of_[a];
    if (b > blocks_.size()) {
      throw Error("equivalence blocks must be numbered by first occurrence");
    }
    if (b == blocks_.size()) {
      blocks_.emplace_back();
    }
    blocks_[b].push_back(a);
  }
}

namespace {

using Mask = std::vector<std::uint8_t>;

// For each a, the indicator over E.members() of {e : ea = a}.
std::vector<Mask> left_identity_sets(FiniteSemigroup const& s,
                                     DistinguishedSemilattice const& e) {
  std::vector<Mask> keys(s.size(), Mask(e.size(), 0));
  for (Index a = 0; a < s.size(); ++a) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      keys[a][i] = s.mul(e.members()[i], a) == a;
    }
  }
  return keys;
}

std::vector<Mask> right_identity_sets(FiniteSemigroup const& s,
                                      DistinguishedSemilattice const& e) {
  std::vector<Mask> keys(s.size(), Mask(e.size(), 0));
  for (Index a = 0; a < s.size(); ++a) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      keys[a][i] = s.mul(a, e.members()[i]) == a;
    }
  }
  return keys;
}

// Locates the unique E-member of each block and spreads it over the block.
Checked<std::vector<Index>> representatives(EquivalenceRelation const& rel,
                                            DistinguishedSemilattice const& e,
                                            std::string const& side) {
  std::vector<Index> rep(rel.size(), kUndefined);
  for (auto const& block : rel.blocks()) {
    std::vector<Index> found;
    for (Index a : block) {
      if (e.contains(a)) {
        found.push_back(a);
      }
    }
    if (found.empty()) {
      return make_failure(FailureCode::NoIdempotentInClass, {block.front()},
                          side);
    }
    if (found.size() > 1) {
      return make_failure(FailureCode::MultipleIdempotentsInClass,
                          {found[0], found[1]}, side);
    }
    for (Index a : block) {
      rep[a] = found.front();
    }
  }
  return rep;
}

}  // namespace

TildeRelations tilde_relations(FiniteSemigroup const& s,
                               DistinguishedSemilattice const& e) {
  return {EquivalenceRelation::from_keys(left_identity_sets(s, e)),
          EquivalenceRelation::from_keys(right_identity_sets(s, e))};
}

EquivalenceRelation greens_r(FiniteSemigroup const& s) {
  std::vector<Mask> ideals(s.size(), Mask(s.size(), 0));
  for (Index a = 0; a < s.size(); ++a) {
    ideals[a][a] = 1;
    for (Index x = 0; x < s.size(); ++x) {
      ideals[a][s.mul(a, x)] = 1;
    }
  }
  return EquivalenceRelation::from_keys(ideals);
}

EquivalenceRelation greens_l(FiniteSemigroup const& s) {
  std::vector<Mask> ideals(s.size(), Mask(s.size(), 0));
  for (Index a = 0; a < s.size(); ++a) {
    ideals[a][a] = 1;
    for (Index x = 0; x < s.size(); ++x) {
      ideals[a][s.mul(x, a)] = 1;
    }
  }
  return EquivalenceRelation::from_keys(ideals);
}

Checked<InverseCertificate> check_inverse(FiniteSemigroup const& s) {
  auto const n = s.size();
  for (Index a = 0; a < n; ++a) {
    bool regular = false;
    for (Index x = 0; x < n && !regular; ++x) {
      regular = s.mul(s.mul(a, x), a) == a;
    }
    if (!regular) {
      return make_failure(FailureCode::NotRegular, {a});
    }
  }
  auto const idem = s.idempotents();
  for (Index e : idem) {
    for (Index f : idem) {
      if (s.mul(e, f) != s.mul(f, e)) {
        return make_failure(FailureCode::IdempotentsDontCommute, {e, f});
      }
    }
  }
  InverseCertificate cert{std::vector<Index>(n, kUndefined)};
  for (Index a = 0; a < n; ++a) {
    for (Index x = 0; x < n; ++x) {
      if (s.mul(s.mul(a, x), a) == a && s.mul(s.mul(x, a), x) == x) {
        if (cert.inv[a] != kUndefined) {
          return make_failure(FailureCode::InternalInconsistency,
                              {a, cert.inv[a], x}, "inverse not unique");
        }
        cert.inv[a] = x;
      }
    }
  }
  return cert;
}

Checked<Relation> natural_order(FiniteSemigroup const& s,
                                DistinguishedSemilattice const& e,
                                std::vector<Index> const& plus,
                                std::vector<Index> const& star) {
  auto const n = s.size();
  Relation order(n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      bool const by_plus = s.mul(plus[a], b) == a;
      bool const by_star = s.mul(b, star[a]) == a;
      bool left_exists = false;
      bool right_exists = false;
      for (Index f : e.members()) {
        left_exists = left_exists || s.mul(f, b) == a;
        right_exists = right_exists || s.mul(b, f) == a;
      }
      if (by_plus != by_star || by_plus != left_exists ||
          by_plus != right_exists) {
        return make_failure(FailureCode::InternalInconsistency, {a, b},
                            "characterisations of the natural order differ");
      }
      order.set(a, b, by_plus);
    }
  }
  return order;
}

Checked<Relation> natural_order(RestrictionStructure const& r) {
  return natural_order(r.base(), r.semilattice(), r.plus_map(),
                       r.star_map());
}

Checked<RestrictionStructure> derive_restriction(
    FiniteSemigroup const& s, DistinguishedSemilattice const& e) {
  auto const n = s.size();
  if (e.size() == 0 && n != 0) {
    return make_failure(FailureCode::EmptySemilattice, {});
  }
  auto const tilde = tilde_relations(s, e);

  // Plus side: representatives, left congruence, ae = (ae)^+ a.
  auto plus = representatives(tilde.tilde_r, e, "tilde-R (plus side)");
  if (!plus) {
    return plus.failure();
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (!tilde.tilde_r.related(a, b)) {
        continue;
      }
      for (Index c = 0; c < n; ++c) {
        if (!tilde.tilde_r.related(s.mul(c, a), s.mul(c, b))) {
          return make_failure(FailureCode::NotLeftCongruence, {a, b, c},
                              "plus side");
        }
      }
    }
  }
  for (Index a = 0; a < n; ++a) {
    for (Index f : e.members()) {
      Index const af = s.mul(a, f);
      if (af != s.mul((*plus)[af], a)) {
        return make_failure(FailureCode::AmpleConditionFails, {a, f},
                            "plus side: ae != (ae)^+ a");
      }
    }
  }

  // Star side: representatives, right congruence, ea = a (ea)^*.
  auto star = representatives(tilde.tilde_l, e, "tilde-L (star side)");
  if (!star) {
    return star.failure();
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (!tilde.tilde_l.related(a, b)) {
        continue;
      }
      for (Index c = 0; c < n; ++c) {
        if (!tilde.tilde_l.related(s.mul(a, c), s.mul(b, c))) {
          return make_failure(FailureCode::NotRightCongruence, {a, b, c},
                              "star side");
        }
      }
    }
  }
  for (Index a = 0; a < n; ++a) {
    for (Index f : e.members()) {
      Index const fa = s.mul(f, a);
      if (fa != s.mul(a, (*star)[fa])) {
        return make_failure(FailureCode::AmpleConditionFails, {a, f},
                            "star side: ea != a (ea)^*");
      }
    }
  }

  auto order = natural_order(s, e, *plus, *star);
  if (!order) {
    return order.failure();
  }

  RestrictionStructure r;
  r.base_ = s;
  r.e_ = e;
  r.plus_ = std::move(plus).value();
  r.star_ = std::move(star).value();
  r.order_ = std::move(order).value();

  if (e.members() == s.idempotents()) {
    if (auto cert = check_inverse(s)) {
      for (Index a = 0; a < n; ++a) {
        if (r.plus_[a] != s.mul(a, cert->inv[a]) ||
            r.star_[a] != s.mul(cert->inv[a], a)) {
          return make_failure(FailureCode::InternalInconsistency, {a},
                              "inverse semigroup with a^+ != aa^-1");
        }
      }
      r.inverse_ = *cert;
    }
  }
  return r;
}

Verdict check_plus_star_identities(RestrictionStructure const& r) {
  auto const n = r.size();
  for (Index s = 0; s < n; ++s) {
    for (Index t = 0; t < n; ++t) {
      if (r.plus(r.mul(s, t)) != r.plus(r.mul(s, r.plus(t)))) {
        return make_failure(FailureCode::PlusStarIdentityFails, {s, t},
                            "(st)^+ != (st^+)^+");
      }
      if (r.star(r.mul(s, t)) != r.star(r.mul(r.star(s), t))) {
        return make_failure(FailureCode::PlusStarIdentityFails, {s, t},
                            "(st)^* != (s^*t)^*");
      }
    }
  }
  return std::nullopt;
}

Verdict check_restriction_invariants(RestrictionStructure const& r) {
  auto const n = r.size();
  auto const& e = r.semilattice();
  for (Index a = 0; a < n; ++a) {
    if (!e.contains(r.plus(a)) || !e.contains(r.star(a))) {
      return make_failure(FailureCode::InternalInconsistency, {a},
                          "plus/star outside E");
    }
    if (r.plus(r.plus(a)) != r.plus(a) || r.star(r.star(a)) != r.star(a)) {
      return make_failure(FailureCode::InternalInconsistency, {a},
                          "plus/star not idempotent");
    }
    if (r.mul(r.plus(a), a) != a || r.mul(a, r.star(a)) != a) {
      return make_failure(FailureCode::InternalInconsistency, {a},
                          "plus/star not identities for a");
    }
  }
  for (Index f : e.members()) {
    if (r.plus(f) != f || r.star(f) != f) {
      return make_failure(FailureCode::InternalInconsistency, {f},
                          "e^+ = e = e^* fails");
    }
  }
  if (auto failure = r.order().check_partial_order()) {
    return failure;
  }
  for (Index f : e.members()) {
    for (Index g : e.members()) {
      if (r.leq(f, g) != (r.mul(f, g) == f)) {
        return make_failure(FailureCode::InternalInconsistency, {f, g},
                            "order on E is not the semilattice order");
      }
    }
  }
  auto const below = r.order().pairs();
  for (auto [a, b] : below) {
    for (auto [c, d] : below) {
      if (!r.leq(r.mul(a, c), r.mul(b, d))) {
        return make_failure(FailureCode::InternalInconsistency, {a, b, c, d},
                            "order not compatible with multiplication");
      }
    }
  }
  return std::nullopt;
}

Checked<RestrictionStructure> make_restriction(FiniteSemigroup const& s,
                                               std::vector<Index> e) {
  auto lattice = validate_semilattice(s, std::move(e));
  if (!lattice) {
    return lattice.failure();
  }
  return derive_restriction(s, *lattice);
}

}  // namespace esnkit
