#pragma once

// Finite (small) categories with a partial product, and the ordered,
// inductive and groupoid levels on top of them. Every capability is
// established by exhaustive checking; restrictions and meets are found by
// scanning for the unique witness.

#include <concepts>
#include <optional>
#include <string>
#include <vector>

#include "esnkit/types.hpp"

namespace esnkit {

// Raw, unvalidated category tables.
struct CategoryData {
  std::size_t n = 0;
  std::vector<Index> objects;
  std::vector<Index> dom;
  std::vector<Index> ran;
  std::vector<Index> prod;  // n*n, kUndefined where no product
  std::optional<Relation> order;
  std::optional<std::vector<Index>> inv;
  std::vector<std::string> labels;

  Index product(Index x, Index y) const { return prod[x * n + y]; }

  bool operator==(CategoryData const&) const = default;
};

class Category {
 public:
  Category() = default;

  std::size_t size() const noexcept { return data_.n; }
  CategoryData const& data() const noexcept { return data_; }

  Index dom(Index x) const { return data_.dom[x]; }
  Index ran(Index x) const { return data_.ran[x]; }
  bool defined(Index x, Index y) const {
    return data_.prod[x * data_.n + y] != kUndefined;
  }
  // kUndefined when x·y does not exist.
  Index prod(Index x, Index y) const { return data_.prod[x * data_.n + y]; }

  bool is_object(Index x) const { return object_mask_[x] != 0; }
  std::vector<Index> const& objects() const noexcept { return data_.objects; }

  bool is_groupoid() const noexcept { return data_.inv.has_value(); }
  // Throws Error unless validated as a groupoid.
  Index inverse(Index x) const;

  std::string label(Index x) const;

 protected:
  CategoryData data_;
  std::vector<std::uint8_t> object_mask_;

 private:
  friend Checked<Category> validate_category(CategoryData data);
  friend Checked<std::vector<Index>> find_inverses(Category const&);
  template <typename C>
    requires std::derived_from<C, Category>
  friend Checked<C> validate_groupoid(C category);
};

class OrderedCategory : public Category {
 public:
  OrderedCategory() = default;

  bool leq(Index a, Index b) const { return data_.order->holds(a, b); }
  Relation const& order() const { return *data_.order; }

  // e|a: the unique b ≤ a with dom(b) = e. Requires e ≤ dom(a).
  Index restrict(Index e, Index a) const;
  // a|f: the unique b ≤ a with ran(b) = f. Requires f ≤ ran(a).
  Index corestrict(Index a, Index f) const;

 protected:
  std::vector<Index> restriction_;    // (e, a) -> e|a or kUndefined
  std::vector<Index> corestriction_;  // (a, f) -> a|f or kUndefined

 private:
  friend Checked<OrderedCategory> validate_ordered(Category const&);
};

class InductiveCategory : public OrderedCategory {
 public:
  InductiveCategory() = default;

  // Greatest lower bound of two objects. Throws Error on non-objects.
  Index meet(Index e, Index f) const;
  // a ⊗ b = [a | r(a)∧d(b)] · [r(a)∧d(b) | b], tabulated at validation.
  Index pseudoproduct(Index a, Index b) const {
    return pseudo_[a * data_.n + b];
  }
  std::vector<Index> const& pseudoproduct_table() const noexcept {
    return pseudo_;
  }

 private:
  friend Checked<InductiveCategory> validate_inductive(OrderedCategory const&);

  std::vector<Index> meet_;  // n*n over elements, kUndefined off objects
  std::vector<Index> pseudo_;
};

// Ca1–Ca3, declared objects = two-sided identities, declared dom/ran are the
// unique identities of Ca3, and x·y exists iff r(x) = d(y).
Checked<Category> validate_category(CategoryData data);

// Partial order, Or1, Or2 and existence and uniqueness of every restriction
// and corestriction (Or3), by exhaustive scan.
Checked<OrderedCategory> validate_ordered(Category const& category);

// (I): every pair of objects has a greatest lower bound among objects.
Checked<InductiveCategory> validate_inductive(OrderedCategory const& category);

// Verifies declared inverses or searches for them (G).
Checked<std::vector<Index>> find_inverses(Category const& category);

template <typename C>
  requires std::derived_from<C, Category>
Checked<C> validate_groupoid(C category) {
  auto inv = find_inverses(category);
  if (!inv) {
    return inv.failure();
  }
  category.data_.inv = std::move(inv).value();
  return category;
}

// Runs every level the data supports: ordered if an order is present,
// inductive if meets exist, groupoid if inverses exist. Returns the first
// failure of a level that is required by `data` (order given → ordered and
// inductive required; inv given → groupoid required).
Checked<InductiveCategory> validate_inductive_data(CategoryData data);

// Lemma suites, each exhaustive over the category.

// a,b ≤ c with d(a)=d(b) or r(a)=r(b) implies a = b.
Verdict check_lemma_so_useful(OrderedCategory const& c);
// a ≤ b implies a = d(a)|b = b|r(a).
Verdict check_lemma_a_dab(OrderedCategory const& c);
// f ≤ e ≤ r(a): (a|e)|f = a|f and a|f ≤ a|e; dually for restrictions.
Verdict check_lemma_rest_ord(OrderedCategory const& c);
// e⊗a = (e∧d(a))|a and a⊗e = a|(r(a)∧e); ⊗ agrees with · where defined.
Verdict check_lemma_apseudoe(InductiveCategory const& c);
// On objects, restriction and corestriction coincide where both defined.
Verdict check_object_restrictions(OrderedCategory const& c);
// In groupoids: a|f = (f|a^{-1})^{-1}.
Verdict check_groupoid_corestriction(InductiveCategory const& c);
// Objects form a meet semilattice under the order (cross-check of (I)).
Verdict check_objects_meet_semilattice(InductiveCategory const& c);

// All of the above that apply to c.
Verdict check_category_lemmas(InductiveCategory const& c);

}  // namespace esnkit
