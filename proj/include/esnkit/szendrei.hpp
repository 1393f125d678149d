#pragma once

// The Szendrei expansion of a finite inductive groupoid, the embedding
// ι: G → Sz(G), and lifting of ordered groupoid premorphisms along ι.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "esnkit/arrows.hpp"
#include "esnkit/category.hpp"

namespace esnkit {

// (U, u): U a sorted subset of star_{d(u)}(G) containing d(u) and u.
struct SzElement {
  std::vector<Index> set;
  Index elem = 0;

  auto operator<=>(SzElement const&) const = default;
};

// Elements of G with dom = e. Throws Error if e is not an object.
std::vector<Index> star_of(Category const& g, Index e);

struct SzExpansion {
  InductiveCategory category;       // validated at all four levels
  std::vector<SzElement> elements;  // element i of category is elements[i]
  std::map<SzElement, Index> positions;

  std::size_t size() const noexcept { return elements.size(); }
  // Throws Error when x is not an element.
  Index index_of(SzElement const& x) const;
};

// Requires g to be a validated groupoid (throws Error otherwise). Element
// order: dom object, then U lexicographically, then u.
Checked<SzExpansion> build_sz(InductiveCategory const& g);

// ((Δ|U) ∪ u⊗V, u⊗v) with Δ = d(u | r(u)∧d(v)).
SzElement sz_pseudoproduct(InductiveCategory const& g, SzElement const& a,
                           SzElement const& b);

// Closed-form pseudoproduct, order, dom/ran, meet, inverse and restriction
// against the generic constructions on sz.category and s_of(sz.category).
Verdict check_sz_formulas(InductiveCategory const& g, SzExpansion const& sz);

// g ↦ ({d(g), g}, g).
MapValues iota(InductiveCategory const& g, SzExpansion const& sz);

inline constexpr std::uint64_t kDefaultLiftBudget = 1'000'000;

// Which functors count as lifts. Inductive functors preserve object meets;
// ordered functors need not.
enum class LiftTarget { InductiveFunctor, OrderedFunctor };

struct LiftResult {
  MapValues lift;               // Sz(G) → H
  std::uint64_t candidates = 0;  // extensions examined
  std::size_t free_elements = 0;
  std::uint64_t survivors = 0;
};

// All extensions of the assignment forced by ι·lift = ψ, filtered to
// functors Sz(G) → H of the requested kind; exactly one must survive.
// Throws Error unless ψ is an ordered groupoid premorphism G → H.
Checked<LiftResult> find_unique_lift(InductiveCategory const& g,
                                     SzExpansion const& sz,
                                     InductiveCategory const& h,
                                     std::span<Index const> psi,
                                     std::uint64_t budget = kDefaultLiftBudget,
                                     LiftTarget kind = LiftTarget::InductiveFunctor);

std::string sz_label(Category const& g, SzElement const& x);

}  // namespace esnkit
