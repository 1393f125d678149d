#pragma once

// Finite semigroups given by Cayley tables, distinguished semilattices,
// the tilde relations and restriction structures.

#include <string>
#include <vector>

#include "esnkit/types.hpp"

namespace esnkit {

using CayleyRows = std::vector<std::vector<Index>>;

// First failing triple (a,b,c) of (ab)c = a(bc) in lexicographic order.
// Out-of-range entries are reported as MALFORMED_TABLE before any
// associativity check runs.
Verdict check_associativity(CayleyRows const& rows);

class FiniteSemigroup {
 public:
  FiniteSemigroup() = default;

  // Throws Error if the table is not n×n with entries in [0,n). Does not
  // check associativity; see make().
  FiniteSemigroup(std::size_t n, std::vector<Index> flat_table,
                  std::vector<std::string> labels = {});

  // Validating constructor: shape, range and associativity.
  static Checked<FiniteSemigroup> make(CayleyRows const& rows,
                                       std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  Index mul(Index a, Index b) const { return table_[a * n_ + b]; }
  std::vector<Index> const& flat_table() const noexcept { return table_; }
  CayleyRows rows() const;

  bool is_idempotent(Index a) const { return mul(a, a) == a; }
  std::vector<Index> idempotents() const;

  std::vector<std::string> const& labels() const noexcept { return labels_; }
  std::string label(Index a) const;

  bool operator==(FiniteSemigroup const&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Index> table_;
  std::vector<std::string> labels_;
};

class DistinguishedSemilattice {
 public:
  DistinguishedSemilattice() = default;

  std::vector<Index> const& members() const noexcept { return members_; }
  bool contains(Index a) const {
    return a < mask_.size() && mask_[a] != 0;
  }
  std::size_t size() const noexcept { return members_.size(); }

  bool operator==(DistinguishedSemilattice const&) const = default;

 private:
  friend Checked<DistinguishedSemilattice> validate_semilattice(
      FiniteSemigroup const&, std::vector<Index>);

  std::vector<Index> members_;
  std::vector<std::uint8_t> mask_;
};

// Certifies E as a commutative subsemigroup of idempotents. An empty E is
// rejected for nonempty S.
Checked<DistinguishedSemilattice> validate_semilattice(
    FiniteSemigroup const& s, std::vector<Index> e);

class EquivalenceRelation {
 public:
  EquivalenceRelation() = default;
  // Block ids must be numbered in order of first occurrence.
  explicit EquivalenceRelation(std::vector<Index> block_of);

  std::size_t size() const noexcept { return block_of_.size(); }
  Index block_of(Index a) const { return block_of_[a]; }
  bool related(Index a, Index b) const {
    return block_of_[a] == block_of_[b];
  }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::vector<std::vector<Index>> const& blocks() const noexcept {
    return blocks_;
  }

  bool operator==(EquivalenceRelation const& other) const {
    return block_of_ == other.block_of_;
  }

  // Groups elements by an arbitrary key; blocks numbered by first element.
  template <typename Key>
  static EquivalenceRelation from_keys(std::vector<Key> const& keys);

 private:
  std::vector<Index> block_of_;
  std::vector<std::vector<Index>> blocks_;
};

struct TildeRelations {
  EquivalenceRelation tilde_r;  // same left identities in E
  EquivalenceRelation tilde_l;  // same right identities in E
};

TildeRelations tilde_relations(FiniteSemigroup const& s,
                               DistinguishedSemilattice const& e);

// Green's R by principal right ideals aS^1; used as an independent oracle.
EquivalenceRelation greens_r(FiniteSemigroup const& s);
EquivalenceRelation greens_l(FiniteSemigroup const& s);

struct InverseCertificate {
  std::vector<Index> inv;
  bool operator==(InverseCertificate const&) const = default;
};

// Unique inverses if S is regular with commuting idempotents.
Checked<InverseCertificate> check_inverse(FiniteSemigroup const& s);

class RestrictionStructure {
 public:
  RestrictionStructure() = default;

  FiniteSemigroup const& base() const noexcept { return base_; }
  DistinguishedSemilattice const& semilattice() const noexcept { return e_; }
  std::size_t size() const noexcept { return base_.size(); }

  Index mul(Index a, Index b) const { return base_.mul(a, b); }
  Index plus(Index a) const { return plus_[a]; }
  Index star(Index a) const { return star_[a]; }
  bool leq(Index a, Index b) const { return order_.holds(a, b); }

  std::vector<Index> const& plus_map() const noexcept { return plus_; }
  std::vector<Index> const& star_map() const noexcept { return star_; }
  Relation const& order() const noexcept { return order_; }

  // Present when E is the set of all idempotents and S is inverse with
  // a^+ = aa^{-1}, a^* = a^{-1}a.
  std::optional<InverseCertificate> const& inverse() const noexcept {
    return inverse_;
  }
  bool is_inverse() const noexcept { return inverse_.has_value(); }

  bool operator==(RestrictionStructure const&) const = default;

 private:
  friend Checked<RestrictionStructure> derive_restriction(
      FiniteSemigroup const&, DistinguishedSemilattice const&);

  FiniteSemigroup base_;
  DistinguishedSemilattice e_;
  std::vector<Index> plus_;
  std::vector<Index> star_;
  Relation order_;
  std::optional<InverseCertificate> inverse_;
};

// Decides the abstract two-sided restriction axioms for (S, E). Plus-side
// conditions are checked before star-side ones so left-restriction
// semigroups such as PT_n fail deterministically on the star side.
Checked<RestrictionStructure> derive_restriction(
    FiniteSemigroup const& s, DistinguishedSemilattice const& e);

// a ≤ b iff a = a^+ b, cross-checked against a = b a^* and the existential
// forms a = eb, a = bf (e,f in E).
Checked<Relation> natural_order(FiniteSemigroup const& s,
                                DistinguishedSemilattice const& e,
                                std::vector<Index> const& plus,
                                std::vector<Index> const& star);
Checked<Relation> natural_order(RestrictionStructure const& r);

// (st)^+ = (st^+)^+ and (st)^* = (s^*t)^* for all pairs.
Verdict check_plus_star_identities(RestrictionStructure const& r);

// Idempotence of plus/star, partial order, compatibility, order on E.
Verdict check_restriction_invariants(RestrictionStructure const& r);

// Convenience: validate E then derive.
Checked<RestrictionStructure> make_restriction(FiniteSemigroup const& s,
                                               std::vector<Index> e);

template <typename Key>
EquivalenceRelation EquivalenceRelation::from_keys(
    std::vector<Key> const& keys) {
  std::vector<Index> block_of(keys.size(), kUndefined);
  std::vector<Key> seen;
  for (Index a = 0; a < keys.size(); ++a) {
    Index found = kUndefined;
    for (Index k = 0; k < seen.size(); ++k) {
      if (seen[k] == keys[a]) {
        found = k;
        break;
      }
    }
    if (found == kUndefined) {
      found = static_cast<Index>(seen.size());
      seen.push_back(keys[a]);
    }
    block_of[a] = found;
  }
  return EquivalenceRelation(std::move(block_of));
}

}  // namespace esnkit
